"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Quantum dimensions at level k are ratios of sines of multiples of pi/(k+2).
With n = 4(k+2) both those sines and the imaginary unit are polynomials in
zeta_n = exp(2 pi i / n), so every value we need is an element of Q(zeta_n),
stored as its coefficient vector modulo the cyclotomic polynomial Phi_n.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .labels import Dec, Label, canonicalize, check_level, LabelError

__all__ = [
    "CycNumber", "cyclotomic_poly", "zeta", "sin_value", "qdim",
    "to_float", "invert", "conductor",
]


# -- polynomials over Q, lists of coefficients, lowest degree first ----------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim(x - y for x, y in zip(a, b))


def _pdivmod(a, b):
    """Long division; exact when b is monic or coefficients are Fractions."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead if lead != 1 else a[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Uses x^n - 1 = prod_{d | n} Phi_d(x) and exact division.
    """
    if n < 1:
        raise ValueError(f"cyclotomic_poly needs n >= 1, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _pdivmod(num, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """zeta^e reduced mod Phi_n for 0 <= e < n, as integer vectors of length phi(n)."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce using the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:deg])]
    return tuple(rows)


def _reduce(p, n):
    """Reduce a polynomial in zeta_n (any length) to the canonical basis."""
    table = _power_table(n)
    deg = len(table[0])
    out = [Fraction(0)] * deg
    for e, c in enumerate(p):
        if c == 0:
            continue
        row = table[e % n]
        for t, v in enumerate(row):
            if v:
                out[t] += c * v
    return out


class CycNumber:
    """An element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        deg = len(cyclotomic_poly(n)) - 1
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > deg:
            coeffs = _reduce(coeffs, n)
        coeffs += [Fraction(0)] * (deg - len(coeffs))
        self.n = n
        self.coeffs = tuple(coeffs)

    @classmethod
    def rational(cls, n: int, value) -> CycNumber:
        return cls(n, [value])

    @classmethod
    def zeta_power(cls, n: int, e: int) -> CycNumber:
        return cls(n, _power_table(n)[e % n])

    def _coerce(self, other) -> CycNumber:
        if isinstance(other, CycNumber):
            if other.n != self.n:
                raise ValueError(f"conductor mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.rational(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNumber(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNumber(self.n, _reduce(_pmul(self.coeffs, other.coeffs), self.n))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * invert(other)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.n)
        # Horner from the top coefficient
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + float(c)
        return acc

    def __float__(self):
        return to_float(self)

    def to_json(self) -> dict:
        return {
            "conductor": self.n,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
            "approx": self.to_complex().real,
        }

    @classmethod
    def from_json(cls, data: dict) -> CycNumber:
        return cls(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])

    def __repr__(self):
        terms = []
        for e, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if e == 0 else f"({c})*z^{e}")
        return f"CycNumber(n={self.n}: {' + '.join(terms) or '0'})"


def invert(a: CycNumber) -> CycNumber:
    """Multiplicative inverse via the extended Euclidean algorithm against Phi_n."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
    # invariant: s_i * a == r_i  (mod Phi_n)
    r0 = [Fraction(c) for c in cyclotomic_poly(a.n)]
    r1 = _trim(a.coeffs)
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    c = r1[0]
    return CycNumber(a.n, [x / c for x in s1])


def to_float(a: CycNumber, *, check_real: bool = True) -> float:
    value = a.to_complex()
    if check_real:
        assert abs(value.imag) < 1e-9, f"expected a real value, imaginary part {value.imag}"
    return value.real


def conductor(k: int) -> int:
    return 4 * (check_level(k) + 2)


def zeta(k: int) -> CycNumber:
    """The generator zeta_n with n = 4(k+2)."""
    return CycNumber.zeta_power(conductor(k), 1)


@lru_cache(maxsize=None)
def sin_value(a: int, k: int) -> CycNumber:
    """sin(a*pi/(k+2)) as an exact element of Q(zeta_{4(k+2)})."""
    n = conductor(k)
    if not 1 <= a <= k + 1:
        raise ValueError(f"sin_value needs 1 <= a <= k+1, got a={a}, k={k}")
    # exp(i*a*pi/(k+2)) = zeta^(2a); divide by 2i = 2*zeta^(n/4)
    diff = CycNumber.zeta_power(n, 2 * a) - CycNumber.zeta_power(n, -2 * a)
    return diff * CycNumber.zeta_power(n, -n // 4) * Fraction(1, 2)


@lru_cache(maxsize=None)
def _inv_sin1(k: int) -> CycNumber:
    return invert(sin_value(1, k))


def qdim(label: Label, k: int) -> CycNumber:
    """Quantum dimension of a canonical module label."""
    c = canonicalize(label, k)
    if c != label:
        raise LabelError(f"qdim expects a canonical label, got {label} (canonical form {c})")
    return _qdim_cached(label, k)


@lru_cache(maxsize=None)
def _qdim_cached(label: Label, k: int) -> CycNumber:
    inv = _inv_sin1(k)
    if label.twisted and k % 2 == 0 and label.i == k // 2:
        return inv
    ratio = sin_value(label.i + 1, k) * inv
    if label.twisted or label.dec is Dec.PLUS:
        return ratio * 2
    return ratio
