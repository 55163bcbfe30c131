"""Fusion rules of L(k,0)^K and the assembled fusion table.

Each ``_family_*`` generator evaluates one family of closed-form rules over
every label pair it applies to and yields ``(A, B, outcome, source)``.
:func:`build_table` writes every yielded row into a symmetric sparse tensor
keyed on sorted label triples.  Rows are complete (every label C of the
product sector is written, zeros included), so two families that cover the
same triple are compared entry by entry and any disagreement is a
:class:`ConflictError` naming both families.

Products of two twisted modules from the same sector are never evaluated
directly: the tensor is fully symmetric (all modules are self-dual), so such
a triple (T, T', U) is already fixed by the row U x T.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .labels import (
    Dec, Label, LabelError, Sector, canonicalize, check_level, enumerate_labels,
    expand_half, format_label, parse_label, sector_mul, variant_mul, variant_to_sigma,
)

__all__ = [
    "FusionOutcome", "FusionTable", "ConflictError", "IncompleteError",
    "sign_rule", "affine_range", "fuse_uu", "fuse_ut", "fuse_ut_half",
    "fuse_tt_cross", "fuse_tt_same", "build_table", "fuse", "FAMILIES",
]

PLUS, MINUS = Dec.PLUS, Dec.MINUS


class ConflictError(RuntimeError):
    """Two rule families assign different multiplicities to one triple."""

    def __init__(self, triple, first, second):
        self.triple = triple
        self.first = first      # (source, value)
        self.second = second
        names = ", ".join(format_label(x) for x in triple)
        super().__init__(
            f"N({names}) = {first[1]} from {first[0]} but {second[1]} from {second[0]}")


class IncompleteError(RuntimeError):
    """Some graded triple is covered by no rule and no symmetry image."""

    def __init__(self, missing):
        self.missing = missing
        sample = "; ".join("(" + ", ".join(format_label(x) for x in t) + ")" for t in missing[:5])
        super().__init__(f"{len(missing)} triples not determined by any rule, e.g. {sample}")


@dataclass
class FusionOutcome:
    """A fusion product: canonical labels with positive multiplicities."""
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {c: m for c, m in self.entries.items() if m}
        if any(m < 0 for m in self.entries.values()):
            raise ValueError("negative multiplicity in a fusion outcome")

    def __getitem__(self, label):
        return self.entries.get(label, 0)

    def __iter__(self):
        return iter(sorted(self.entries))

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if isinstance(other, FusionOutcome):
            return self.entries == other.entries
        if isinstance(other, dict):
            return self.entries == {c: m for c, m in other.items() if m}
        return NotImplemented

    def sector(self):
        sectors = {c.sector for c in self.entries}
        assert len(sectors) <= 1, f"fusion outcome spans several sectors: {sectors}"
        return sectors.pop() if sectors else None

    def items(self):
        return [(c, self.entries[c]) for c in sorted(self.entries)]

    def format(self) -> str:
        parts = []
        for c, m in self.items():
            parts.append(format_label(c) if m == 1 else f"{format_label(c)}*{m}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.format()


# -- small helpers -------------------------------------------------------------

def sign_rule(i: int, j: int, l: int, sign: Dec = PLUS) -> Dec:
    """sign(i,j,l)^+ is + iff i+j-l is divisible by 4; ``sign=MINUS`` negates."""
    if (i + j + l) % 2:
        raise ValueError(f"sign_rule needs i+j+l even, got ({i},{j},{l})")
    base = PLUS if (i + j - l) % 4 == 0 else MINUS
    return base if sign is PLUS else base.flipped()


def affine_range(i: int, j: int, k: int) -> list[int]:
    """Weights l in the sl_2 level-k fusion L(i) x L(j)."""
    return list(range(abs(i - j), min(i + j, 2 * k - i - j) + 1, 2))


def _half_range(i: int, k: int) -> list[int]:
    """l with |i - k/2| <= l <= k/2 - 1 and i + k/2 + l even."""
    h = k // 2
    return [l for l in range(abs(i - h), h) if (i + h + l) % 2 == 0]


def _check(label: Label, k: int) -> Label:
    c = canonicalize(label, k)
    if c != label:
        raise LabelError(f"expected a canonical label, got {format_label(label)}")
    return label


def _tw(acc: Counter, sector: Sector, l: int, sign: Dec, k: int, mult: int = 1) -> None:
    """Add a twisted-sector term, reflecting l > k/2 and splitting l = k/2."""
    if k % 2 == 0 and l == k // 2 and sign.is_sign:
        for c, m in expand_half(sector, sign, k).items():
            acc[c] += m * mult
    else:
        acc[canonicalize(Label(sector, l, sign), k)] += mult


def _both(acc, sector, l, k):
    _tw(acc, sector, l, PLUS, k)
    _tw(acc, sector, l, MINUS, k)


def _u(i: int, variant: int | None = None) -> Label:
    if i % 2:
        return Label(Sector.E, i, PLUS)
    return Label(Sector.E, i, Dec.from_variant(variant))


def _half(sector, j, k):
    return Label(sector, k // 2, Dec.from_variant(j))


def _is_half(label, k):
    return label.twisted and k % 2 == 0 and label.i == k // 2


def _third(r: Sector, s: Sector) -> Sector:
    return sector_mul(r, s)


# -- untwisted x untwisted -------------------------------------------------------

# Unordered variant pairs -> (variant when i+j+l in 4Z, variant when in 4Z+2).
_UU_EVEN = {}
for _r in (1, 2, 3, 4):
    _UU_EVEN[(_r, _r)] = (1, 4)
for _pair, _out in {((3, 4), (2, 1)): (2, 3), ((2, 4), (3, 1)): (3, 2), ((2, 3), (4, 1)): (4, 1)}.items():
    for _a, _b in _pair:
        _UU_EVEN[(_a, _b)] = _UU_EVEN[(_b, _a)] = _out


def _uu(A: Label, B: Label, k: int) -> Counter:
    acc = Counter()
    i, j = A.i, B.i
    for l in affine_range(i, j, k):
        if i % 2 and j % 2:
            for v in (1, 2, 3, 4):
                acc[_u(l, v)] += 1
        elif i % 2 or j % 2:
            acc[_u(l)] += 1
        else:
            v4z, v4z2 = _UU_EVEN[(A.dec.variant, B.dec.variant)]
            acc[_u(l, v4z if (i + j + l) % 4 == 0 else v4z2)] += 1
    return acc


def fuse_uu(A: Label, B: Label, k: int) -> FusionOutcome:
    check_level(k)
    _check(A, k), _check(B, k)
    if A.twisted or B.twisted:
        raise LabelError("fuse_uu takes two untwisted labels")
    return FusionOutcome(dict(_uu(A, B, k)))


# -- untwisted x twisted, twisted index below k/2 --------------------------------

def _ut_printed(A: Label, B: Label, k: int) -> Counter:
    """Rules as displayed, with the untwisted variant in sigma_1 coordinates."""
    acc = Counter()
    i, j, r, b = A.i, B.i, B.sector, B.dec
    for l in affine_range(i, j, k):
        if i % 2:
            _both(acc, r, l, k)
            continue
        a = A.dec.variant
        if r is Sector.S1:
            out = sign_rule(i, j, l, b if a in (1, 2) else b.flipped())
        elif r is Sector.S2:
            out = sign_rule(i, j, l, b if a in (1, 3) else b.flipped())
        else:
            same = (j - l) % 4 == 2
            if a in (1, 4):
                same = not same
            out = b if same else b.flipped()
        _tw(acc, r, l, out, k)
    return acc


def _ut_sigma(A: Label, B: Label, k: int) -> Counter:
    """Uniform rule in the coordinates of the twisting involution (even i only)."""
    acc = Counter()
    i, j, r, b = A.i, B.i, B.sector, B.dec
    ar = variant_to_sigma(int(r), i, A.dec.variant)
    for l in affine_range(i, j, k):
        _tw(acc, r, l, sign_rule(i, j, l, b if ar in (1, 2) else b.flipped()), k)
    return acc


def fuse_ut(A: Label, B: Label, k: int) -> FusionOutcome:
    check_level(k)
    _check(A, k), _check(B, k)
    if A.twisted or not B.twisted:
        raise LabelError("fuse_ut takes an untwisted and a twisted label")
    if _is_half(B, k):
        raise LabelError("half-level twisted labels go through fuse_ut_half")
    return FusionOutcome(dict(_ut_printed(A, B, k)))


# -- untwisted x half-level -------------------------------------------------------

def _ut_half(A: Label, B: Label, k: int) -> Counter:
    acc = Counter()
    i, r, h = A.i, B.sector, k // 2
    if i % 2:
        for l in _half_range(i, k):
            _both(acc, r, l, k)
        return acc
    # L^{a} x T^{b} = L^{ab} x T^{1}, all in sigma_r coordinates
    c = variant_mul(variant_to_sigma(int(r), i, A.dec.variant), B.dec.variant)
    ibar = 2 if i % 4 == 2 else 0
    low = c in (1, 2)
    for l in _half_range(i, k):
        in_4z = (i + h - l) % 4 == 0
        _tw(acc, r, l, PLUS if in_4z == low else MINUS, k)
    acc[_half(r, c + ibar if low else c - ibar, k)] += 1
    return acc


def fuse_ut_half(A: Label, B: Label, k: int) -> FusionOutcome:
    check_level(k)
    if k % 2:
        raise LabelError(f"k={k} is odd; there is no half-level module")
    _check(A, k), _check(B, k)
    if A.twisted or not _is_half(B, k):
        raise LabelError("fuse_ut_half takes an untwisted label and a half-level twisted label")
    return FusionOutcome(dict(_ut_half(A, B, k)))


# -- twisted x twisted, distinct sectors ---------------------------------------------

# k in 4Z+2, both half-level: sign of the even-l terms, keyed on (r, s) sectors.
def _hh_sign_4z2(r: int, s: int, a: int, b: int) -> Dec:
    if (r, s) == (1, 2):
        return PLUS if ((a in (1, 4)) == (b in (1, 4))) else MINUS
    if (r, s) == (1, 3):
        return PLUS if ((a in (1, 3)) == (b in (1, 3))) else MINUS
    if (r, s) == (2, 3):
        return PLUS if ((a in (1, 3)) == (b in (1, 4))) else MINUS
    raise ValueError((r, s))


# k in 4Z, sigma_1 x sigma_2, both half-level: (a, b) -> (half-level variant, sign).
_HH_4Z = {}
for _pairs, _out in (
    (((1, 1), (2, 3), (3, 2), (4, 4)), (1, PLUS)),
    (((1, 2), (2, 4), (3, 1), (4, 3)), (3, MINUS)),
    (((1, 3), (2, 1), (3, 4), (4, 2)), (4, MINUS)),
    (((1, 4), (4, 1), (2, 2), (3, 3)), (2, PLUS)),
):
    for _p in _pairs:
        _HH_4Z[_p] = _out


def _tt_generic(A, B, k):
    acc = Counter()
    t = _third(A.sector, B.sector)
    for l in affine_range(A.i, B.i, k):
        _both(acc, t, l, k)
    return acc


def _tt_half_odd(A, B, k):
    """A = T_r(i odd), B = T_s(k/2, j)."""
    acc = Counter()
    t = _third(A.sector, B.sector)
    for l in _half_range(A.i, k):
        _both(acc, t, l, k)
    return acc


def _tt_half_even_12(A, B, k):
    """A = T_1(i even, +/-), B = T_2(k/2, j)."""
    acc = Counter()
    for l in _half_range(A.i, k):
        _both(acc, Sector.S3, l, k)
    sign = A.dec if B.dec.variant in (1, 3) else A.dec.flipped()
    for j in ((1, 4) if sign is PLUS else (2, 3)):
        acc[_half(Sector.S3, j, k)] += 1
    return acc


def _tt_half_half(A, B, k):
    acc = Counter()
    r, s = int(A.sector), int(B.sector)
    t = _third(A.sector, B.sector)
    a, b = A.dec.variant, B.dec.variant
    if k % 4 == 2:
        sign = _hh_sign_4z2(r, s, a, b)
    else:
        assert (r, s) == (1, 2)
        j, sign = _HH_4Z[(a, b)]
        acc[_half(t, j, k)] += 1
    for l in range(0, k // 2, 2):
        _tw(acc, t, l, sign, k)
    return acc


def _tt_half_gap(A, B, k):
    """A = T_1(k/2, b), B = T_2(i even, +/-), k in 4Z: the T_3(k/2, *) part only.

    No displayed rule covers these triples.  Associativity leaves exactly one
    choice: T_1(k/2,1) x T_2(0,+) contains T_3(k/2,1) + T_3(k/2,3), the other
    cases follow by moving simple currents and by T_2(i,.) = L(i)^v x T_2(0,+).
    All other terms of the row are written by the generic rule.
    """
    match = (A.dec.variant in (1, 3)) == (B.dec is PLUS)
    return Counter({_half(Sector.S3, x, k): 1 for x in ((1, 3) if match else (2, 4))})


def fuse_tt_cross(A: Label, B: Label, k: int) -> FusionOutcome:
    check_level(k)
    _check(A, k), _check(B, k)
    if not (A.twisted and B.twisted):
        raise LabelError("fuse_tt_cross takes two twisted labels")
    if A.sector is B.sector:
        raise LabelError("labels share a sector; use fuse_tt_same")
    if B.sector < A.sector:
        A, B = B, A
    ha, hb = _is_half(A, k), _is_half(B, k)
    if ha and hb:
        if k % 4 == 2 or (int(A.sector), int(B.sector)) == (1, 2):
            return FusionOutcome(dict(_tt_half_half(A, B, k)))
        # the remaining k in 4Z pairs follow from symmetry of the tensor
        return _closure(A, B, k)
    if not ha and not hb:
        return FusionOutcome(dict(_tt_generic(A, B, k)))
    T, H = (B, A) if ha else (A, B)
    if T.i % 2:
        return FusionOutcome(dict(_tt_half_odd(T, H, k)))
    if (T.sector, H.sector) == (Sector.S1, Sector.S2):
        return FusionOutcome(dict(_tt_half_even_12(T, H, k)))
    return _closure(A, B, k)


def _closure(A, B, k):
    """Row A x B read off from the symmetric table."""
    return build_table(k).fuse(A, B)


def fuse_tt_same(A: Label, B: Label, k: int) -> FusionOutcome:
    """A x B for two twisted labels of one sector, via N(A,B,C) = N(C,A,B)."""
    check_level(k)
    _check(A, k), _check(B, k)
    if not (A.twisted and B.twisted) or A.sector is not B.sector:
        raise LabelError("fuse_tt_same takes two twisted labels of the same sector")
    out = {}
    for C in enumerate_labels(k):
        if C.twisted:
            continue
        row = fuse_ut_half(C, A, k) if _is_half(A, k) else fuse_ut(C, A, k)
        if row[B]:
            out[C] = row[B]
    return FusionOutcome(out)


# -- rule families over all pairs -----------------------------------------------------

def _family_uu(k, labels):
    untw = [x for x in labels if not x.twisted]
    for A, B in combinations_with_replacement(untw, 2):
        yield A, B, _uu(A, B, k), "uu"


def _family_ut_printed(k, labels):
    for A in labels:
        if A.twisted:
            continue
        for B in labels:
            if B.twisted and not _is_half(B, k):
                src = "ut.odd" if A.i % 2 else f"ut.even.{B.sector.tag}.printed"
                yield A, B, _ut_printed(A, B, k), src


def _family_ut_sigma(k, labels):
    for A in labels:
        if A.twisted or A.i % 2:
            continue
        for B in labels:
            if B.twisted and not _is_half(B, k):
                yield A, B, _ut_sigma(A, B, k), f"ut.even.{B.sector.tag}.sigma_coords"


def _family_ut_half(k, labels):
    if k % 2:
        return
    for A in labels:
        if A.twisted:
            continue
        for B in labels:
            if _is_half(B, k):
                yield A, B, _ut_half(A, B, k), "ut_half.odd" if A.i % 2 else "ut_half.even"


def _family_tt_cross(k, labels):
    tw = [x for x in labels if x.twisted]
    for A in tw:
        for B in tw:
            if B.sector <= A.sector:
                continue
            ha, hb = _is_half(A, k), _is_half(B, k)
            if not ha and not hb:
                yield A, B, _tt_generic(A, B, k), "tt.generic"
            elif ha and hb:
                if k % 4 == 2:
                    yield A, B, _tt_half_half(A, B, k), "tt.half_half.4z+2"
                elif (int(A.sector), int(B.sector)) == (1, 2):
                    yield A, B, _tt_half_half(A, B, k), "tt.half_half.4z"


def _family_tt_half_one(k, labels):
    if k % 2:
        return
    tw = [x for x in labels if x.twisted]
    for T in tw:
        if _is_half(T, k):
            continue
        for H in tw:
            if not _is_half(H, k) or H.sector is T.sector:
                continue
            if T.i % 2:
                yield T, H, _tt_half_odd(T, H, k), "tt.half.odd"
            elif (T.sector, H.sector) == (Sector.S1, Sector.S2):
                yield T, H, _tt_half_even_12(T, H, k), "tt.half.even.T1xT2"


def _family_tt_half_gap(k, labels):
    if k % 4:
        return
    for A in labels:
        if A.sector is not Sector.S1 or not _is_half(A, k):
            continue
        for B in labels:
            if B.sector is Sector.S2 and not _is_half(B, k) and B.i % 2 == 0:
                yield A, B, _tt_half_gap(A, B, k), "tt.half.even.T1xT2.derived"


# Fixed order; conflict reports name the earlier family first.
FAMILIES = (
    ("uu", _family_uu),
    ("ut", _family_ut_printed),
    ("ut.sigma_coords", _family_ut_sigma),
    ("ut_half", _family_ut_half),
    ("tt_cross", _family_tt_cross),
    ("tt_cross.half", _family_tt_half_one),
    ("tt_cross.derived", _family_tt_half_gap),
)

# families whose rows only cover the half-level part of the product sector
_PARTIAL = {"tt_cross.derived": lambda C, k: _is_half(C, k)}


class FusionTable:
    """Symmetric sparse N(A,B,C) over the canonical labels at level k."""

    def __init__(self, k: int, tensor: dict, sources: dict | None = None):
        self.k = check_level(k)
        self.labels = enumerate_labels(k)
        self.index = {x: n for n, x in enumerate(self.labels)}
        self.tensor = {t: m for t, m in tensor.items() if m}
        self.sources = sources or {}
        self._dense = None

    def __len__(self):
        return len(self.labels)

    def N(self, A: Label, B: Label, C: Label) -> int:
        key = tuple(sorted((self.index[A], self.index[B], self.index[C])))
        return self.tensor.get(key, 0)

    def fuse(self, A: Label, B: Label) -> FusionOutcome:
        for x in (A, B):
            if x not in self.index:
                raise LabelError(f"{format_label(x)} is not a canonical label at k={self.k}")
        dense = self.dense()
        row = dense[self.index[A], self.index[B]]
        return FusionOutcome({self.labels[c]: int(row[c]) for c in np.nonzero(row)[0]})

    def dense(self) -> np.ndarray:
        """Full (n, n, n) int64 array; cached, treat as read-only."""
        if self._dense is None:
            n = len(self.labels)
            arr = np.zeros((n, n, n), dtype=np.int64)
            for (a, b, c), m in self.tensor.items():
                for p in {(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)}:
                    arr[p] = m
            arr.setflags(write=False)
            self._dense = arr
        return self._dense

    def __eq__(self, other):
        if not isinstance(other, FusionTable):
            return NotImplemented
        return self.k == other.k and self.tensor == other.tensor

    def with_entry(self, key, value) -> FusionTable:
        """Copy with one sorted triple set to ``value`` (used by mutation tests)."""
        tensor = dict(self.tensor)
        tensor[tuple(sorted(key))] = value
        return FusionTable(self.k, tensor, self.sources)

    # -- export ------------------------------------------------------------------

    def to_json(self) -> str:
        triples = [[a, b, c, m] for (a, b, c), m in sorted(self.tensor.items())]
        doc = {"k": self.k, "labels": [format_label(x) for x in self.labels], "triples": triples}
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> FusionTable:
        doc = json.loads(text)
        k = int(doc["k"])
        labels = [parse_label(s) for s in doc["labels"]]
        if labels != enumerate_labels(k):
            raise ValueError("label list does not match the canonical enumeration")
        tensor = {}
        for a, b, c, m in doc["triples"]:
            if not a <= b <= c:
                raise ValueError(f"triple {(a, b, c)} is not sorted")
            tensor[(a, b, c)] = int(m)
        return cls(k, tensor)

    def to_csv(self) -> str:
        lines = ["A,B,outcome"]
        for A in self.labels:
            for B in self.labels:
                lines.append(f"{format_label(A)},{format_label(B)},{self.fuse(A, B).format()}")
        return "\n".join(lines) + "\n"


def _product_sector_labels(labels):
    by_sector = {}
    for x in labels:
        by_sector.setdefault(x.sector, []).append(x)
    return by_sector


def _run_family(fn, k, labels):
    return list(fn(k, labels))


def build_table(k: int, *, jobs: int = 1, families=FAMILIES, allow_incomplete: bool = False) -> FusionTable:
    """Evaluate every rule family and merge into a symmetric table.

    ``jobs > 1`` evaluates families in worker threads; the merge itself is
    sequential in the fixed family order, so results and conflict reports do
    not depend on scheduling.
    """
    k = check_level(k)
    return _build_cached(k, jobs, tuple(families), allow_incomplete)


_CACHE = {}


def _build_cached(k, jobs, families, allow_incomplete):
    key = (k, tuple(name for name, _ in families), allow_incomplete)
    if key in _CACHE:
        return _CACHE[key]
    labels = enumerate_labels(k)
    index = {x: n for n, x in enumerate(labels)}
    by_sector = _product_sector_labels(labels)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_family, fn, k, labels) for _, fn in families]
            rows = [f.result() for f in futures]
    else:
        rows = [_run_family(fn, k, labels) for _, fn in families]

    tensor, sources = {}, {}
    for (name, _), family_rows in zip(families, rows):
        partial = _PARTIAL.get(name)
        for A, B, acc, src in family_rows:
            sector = sector_mul(A.sector, B.sector)
            a, b = index[A], index[B]
            for C in by_sector[sector]:
                if partial and not partial(C, k):
                    continue
                key = tuple(sorted((a, b, index[C])))
                value = acc.get(C, 0)
                if key in tensor:
                    if tensor[key] != value:
                        raise ConflictError(
                            tuple(labels[x] for x in key), (sources[key], tensor[key]), (src, value))
                else:
                    tensor[key] = value
                    sources[key] = src
            stray = [C for C in acc if C.sector is not sector]
            assert not stray, f"{src} produced labels outside sector {sector.tag}: {stray}"

    if not allow_incomplete:
        missing = []
        n = len(labels)
        for a in range(n):
            for b in range(a, n):
                sector = sector_mul(labels[a].sector, labels[b].sector)
                for C in by_sector[sector]:
                    c = index[C]
                    if c >= b and (a, b, c) not in tensor:
                        missing.append((labels[a], labels[b], C))
        if missing:
            raise IncompleteError(missing)

    table = FusionTable(k, tensor, sources)
    _CACHE[key] = table
    return table


def fuse(table: FusionTable, A: Label, B: Label) -> FusionOutcome:
    return table.fuse(A, B)
