"""Independent consistency checks for a built fusion table.

The exact checks (unit, grading, counts/duality, simple currents, quantum
dimension homomorphism, associativity) decide pass/fail.  The Perron-Frobenius
check is float based and only advisory.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from math import lcm

import numpy as np

from .cyclo import _power_table, conductor, qdim, to_float
from .fusion import ConflictError, FusionTable, IncompleteError, build_table
from .labels import (
    Dec, Label, Sector, format_label, label_count, unit, variant_mul, variant_to_sigma,
)

__all__ = [
    "CheckResult", "VerificationReport", "check_unit", "check_associativity",
    "check_qdim_homomorphism", "check_grading", "check_counts_and_duality",
    "check_simple_currents", "check_perron_frobenius", "verify_all", "CHECKS",
    "mutation_detected", "mutation_sensitivity",
]

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class CheckResult:
    name: str
    status: str
    counterexample: dict | None = None
    ms: float = 0.0
    advisory: bool = False

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass
class VerificationReport:
    k: int
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks if not c.advisory)

    def to_json(self) -> str:
        return json.dumps({
            "k": self.k, "seed": self.seed,
            "checks": [{"name": c.name, "status": c.status, "counterexample": c.counterexample,
                        "ms": round(c.ms, 3), "advisory": c.advisory} for c in self.checks],
        }, indent=2)

    def to_text(self) -> str:
        lines = [f"verification at k={self.k} (seed {self.seed})"]
        for c in self.checks:
            tag = " [advisory]" if c.advisory else ""
            lines.append(f"  {c.status.upper():13s} {c.name}{tag}  ({c.ms:.1f} ms)")
            if c.counterexample and c.status != PASS:
                lines.append(f"      {json.dumps(c.counterexample)}")
        lines.append("ALL CHECKS PASSED" if self.passed else "VERIFICATION FAILED")
        return "\n".join(lines)


def _names(table, *idx):
    return [format_label(table.labels[i]) for i in idx]


def _families(table, *triples):
    """Rule families that wrote the given triples (for failure reports)."""
    out = []
    for t in triples:
        src = table.sources.get(tuple(sorted(int(x) for x in t)))
        if src and src not in out:
            out.append(src)
    return out


# -- exact checks ---------------------------------------------------------------

def check_unit(table: FusionTable) -> CheckResult:
    N = table.dense()
    u = table.index[unit()]
    n = len(table.labels)
    bad = np.argwhere(N[u] != np.eye(n, dtype=np.int64))
    if len(bad):
        a, b = map(int, bad[0])
        return CheckResult("unit", FAIL, {
            "labels": _names(table, a, b), "value": int(N[u, a, b]), "expected": int(a == b),
            "families": _families(table, (u, a, b))})
    return CheckResult("unit", PASS)


def check_grading(table: FusionTable) -> CheckResult:
    for (a, b, c), m in sorted(table.tensor.items()):
        if m and int(table.labels[a].sector) ^ int(table.labels[b].sector) ^ int(table.labels[c].sector):
            return CheckResult("grading", FAIL, {
                "labels": _names(table, a, b, c), "value": m, "families": _families(table, (a, b, c))})
    return CheckResult("grading", PASS)


def check_counts_and_duality(table: FusionTable, seed: int = 0, samples: int = 1000) -> CheckResult:
    n = len(table.labels)
    if n != label_count(table.k):
        return CheckResult("counts_and_duality", FAIL, {"count": n, "expected": label_count(table.k)})
    N = table.dense()
    u = table.index[unit()]
    for a in range(n):
        if N[a, a, u] != 1:
            return CheckResult("counts_and_duality", FAIL, {
                "labels": _names(table, a), "N(A,A,1)": int(N[a, a, u])})
    rng = np.random.default_rng(seed)
    for t in rng.integers(0, n, size=(samples, 3)):
        vals = {int(N[p]) for p in permutations(map(int, t))}
        if len(vals) != 1:
            return CheckResult("counts_and_duality", FAIL, {
                "labels": _names(table, *t), "values": sorted(vals)})
    return CheckResult("counts_and_duality", PASS)


def _current_image(x: Label, j: int, k: int) -> Label:
    """Expected image of x under fusion with the vacuum variant L(k,0)^j."""
    if not x.twisted:
        if x.i % 2:
            return x
        return Label(Sector.E, x.i, Dec.from_variant(variant_mul(j, x.dec.variant)))
    c = variant_to_sigma(int(x.sector), 0, j)
    if k % 2 == 0 and x.i == k // 2:
        return Label(x.sector, x.i, Dec.from_variant(variant_mul(c, x.dec.variant)))
    return x if c in (1, 2) else Label(x.sector, x.i, x.dec.flipped())


def check_simple_currents(table: FusionTable) -> CheckResult:
    N = table.dense()
    n = len(table.labels)
    k = table.k
    idx = [table.index[Label(Sector.E, 0, Dec.from_variant(j))] for j in (1, 2, 3, 4)]
    mats = [N[i] for i in idx]
    for j, P in enumerate(mats, 1):
        if not (np.all((P == 0) | (P == 1)) and np.all(P.sum(0) == 1) and np.all(P.sum(1) == 1)):
            return CheckResult("simple_currents", FAIL, {
                "current": f"U:0:v{j}", "reason": "fusion matrix is not a permutation"})
    for a in range(4):
        for b in range(4):
            c = variant_mul(a + 1, b + 1) - 1
            if not np.array_equal(mats[a] @ mats[b], mats[c]):
                return CheckResult("simple_currents", FAIL, {
                    "currents": [f"U:0:v{a + 1}", f"U:0:v{b + 1}"],
                    "reason": f"product is not U:0:v{c + 1}"})
    for j, P in enumerate(mats, 1):
        for x in range(n):
            want = table.index[_current_image(table.labels[x], j, k)]
            got = int(np.argmax(P[x]))
            if got != want:
                return CheckResult("simple_currents", FAIL, {
                    "current": f"U:0:v{j}", "label": _names(table, x)[0],
                    "image": _names(table, got)[0], "expected": _names(table, want)[0],
                    "families": _families(table, (idx[j - 1], x, got))})
    return CheckResult("simple_currents", PASS)


def _integer_qdims(table: FusionTable):
    """Quantum dimensions as integer coefficient rows over one common denominator."""
    rows = [qdim(x, table.k).coeffs for x in table.labels]
    den = lcm(*(c.denominator for r in rows for c in r))
    Q = [[int(c * den) for c in r] for r in rows]
    return Q, den


def _mult_matrices(Q, n_cond):
    """For each row a of Q, the integer matrix of multiplication by a in the power basis."""
    phi = len(Q[0])
    R = [list(r) for r in _power_table(n_cond)]      # zeta^e reduced, e < n
    mats = []
    for a in Q:
        M = [[0] * phi for _ in range(phi)]
        for e in range(phi):
            row = M[e]
            for t, c in enumerate(a):
                if c:
                    for s, v in enumerate(R[t + e]):
                        if v:
                            row[s] += c * v
        mats.append(M)
    return mats


def check_qdim_homomorphism(table: FusionTable) -> CheckResult:
    """Exact D_A D_B = sum_C N(A,B,C) D_C in Q(zeta_n), for every pair."""
    n_cond = conductor(table.k)
    Q, den = _integer_qdims(table)
    mats = _mult_matrices(Q, n_cond)
    N = table.dense()
    n = len(table.labels)
    bound = max(abs(v) for r in Q for v in r) ** 2 * len(Q[0]) * max(1, int(N.max())) * n * den
    dtype = np.int64 if bound < 2 ** 62 else object
    Qa = np.array(Q, dtype=dtype)
    for a in range(n):
        lhs = Qa @ np.array(mats[a], dtype=dtype)            # den^2 * D_A * D_B, row B
        rhs = den * (N[a].astype(dtype) @ Qa)                # den^2 * sum_C N D_C
        diff = np.nonzero(np.any(lhs != rhs, axis=1))[0]
        if len(diff):
            b = int(diff[0])
            approx_l = to_float(qdim(table.labels[a], table.k)) * to_float(qdim(table.labels[b], table.k))
            approx_r = sum(int(N[a, b, c]) * to_float(qdim(table.labels[c], table.k)) for c in range(n))
            support = [int(c) for c in np.nonzero(N[a, b])[0]]
            return CheckResult("qdim_homomorphism", FAIL, {
                "labels": _names(table, a, b), "lhs_approx": approx_l, "rhs_approx": approx_r,
                "families": _families(table, *[(a, b, c) for c in support])})
    return CheckResult("qdim_homomorphism", PASS)


def check_associativity(table: FusionTable) -> CheckResult:
    """N_A N_B = sum_X N(A,B,X) N_X for all A, B, with (N_A)_{BC} = N(A,B,C)."""
    N = table.dense()
    n = len(table.labels)
    # entries are small integers, float64 products and sums are exact here
    F = N.astype(np.float64)
    flat = F.reshape(n, n * n)
    for a in range(n):
        lhs = np.matmul(F[a][None, :, :], F)                 # [B] = N_A @ N_B
        rhs = (F[a] @ flat).reshape(n, n, n)                 # [B] = sum_X N_ABX N_X
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c, d = map(int, bad[0])
            return CheckResult("associativity", FAIL, {
                "labels": _names(table, a, b, c, d),
                "lhs": int(lhs[b, c, d]), "rhs": int(rhs[b, c, d]),
                "families": _families(table, *[(a, c, y) for y in np.nonzero(N[a, c])[0]])})
    return CheckResult("associativity", PASS)


def check_perron_frobenius(table: FusionTable, tol: float = 1e-6, max_iter: int = 5000) -> CheckResult:
    """Spectral radius of each N_A by power iteration, compared with qdim(A)."""
    N = table.dense().astype(np.float64)
    n = len(table.labels)
    unconverged = []
    for a in range(n):
        # shifting by the identity removes a possible -rho eigenvalue
        M = N[a] + np.eye(n)
        v = np.ones(n) / np.sqrt(n)
        rho, prev = 0.0, -1.0
        for _ in range(max_iter):
            w = M @ v
            rho = float(v @ w) - 1.0
            norm = np.linalg.norm(w)
            v = w / norm
            if abs(rho - prev) < 1e-13:
                break
            prev = rho
        else:
            unconverged.append(format_label(table.labels[a]))
            continue
        expect = to_float(qdim(table.labels[a], table.k))
        if abs(rho - expect) > tol:
            return CheckResult("perron_frobenius", FAIL, {
                "labels": _names(table, a), "spectral_radius": rho, "qdim": expect}, advisory=True)
    if unconverged:
        return CheckResult("perron_frobenius", INCONCLUSIVE, {"unconverged": unconverged}, advisory=True)
    return CheckResult("perron_frobenius", PASS, advisory=True)


CHECKS = (
    ("unit", check_unit),
    ("grading", check_grading),
    ("counts_and_duality", check_counts_and_duality),
    ("simple_currents", check_simple_currents),
    ("qdim_homomorphism", check_qdim_homomorphism),
    ("associativity", check_associativity),
    ("perron_frobenius", check_perron_frobenius),
)


def _timed(name, fn, table, seed):
    t0 = time.perf_counter()
    res = fn(table, seed=seed) if name == "counts_and_duality" else fn(table)
    res.ms = (time.perf_counter() - t0) * 1000
    return res


def verify_all(k: int, seed: int = 0, jobs: int = 1) -> VerificationReport:
    report = VerificationReport(k, seed)
    t0 = time.perf_counter()
    try:
        table = build_table(k, jobs=jobs)
    except (ConflictError, IncompleteError) as exc:
        report.checks.append(CheckResult("build", FAIL, {"error": str(exc)},
                                         ms=(time.perf_counter() - t0) * 1000))
        return report
    report.checks.append(CheckResult("build", PASS, ms=(time.perf_counter() - t0) * 1000))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda c: _timed(c[0], c[1], table, seed), CHECKS))
    else:
        results = [_timed(name, fn, table, seed) for name, fn in CHECKS]
    report.checks.extend(results)
    return report


# -- mutation harness -----------------------------------------------------------------

_CHEAP_FIRST = ("grading", "unit", "qdim_homomorphism", "associativity")


def mutation_detected(table: FusionTable) -> str | None:
    """Name of the first exact check that rejects ``table``, or None."""
    fns = dict(CHECKS)
    for name in _CHEAP_FIRST:
        if fns[name](table).status == FAIL:
            return name
    return None


def mutation_sensitivity(k: int, trials: int = 500, seed: int = 0) -> tuple[float, list]:
    """Fraction of random single-entry perturbations caught by the exact checks.

    Each trial picks a uniformly random sorted triple and moves its
    multiplicity by +1 or -1 (always +1 when the entry is zero).
    """
    base = build_table(k)
    n = len(base.labels)
    rng = np.random.default_rng(seed)
    caught, missed = 0, []
    for _ in range(trials):
        key = tuple(sorted(int(x) for x in rng.integers(0, n, size=3)))
        old = base.tensor.get(key, 0)
        delta = 1 if old == 0 or rng.random() < 0.5 else -1
        if mutation_detected(base.with_entry(key, old + delta)):
            caught += 1
        else:
            missed.append((_names(base, *key), old, old + delta))
    return caught / trials, missed
