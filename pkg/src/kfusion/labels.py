"""Names of the irreducible modules of the Klein-group orbifold L(k,0)^K.

A module is named by a :class:`Label`: the twisted sector it lives in, a weight
index ``i`` (``0 <= i <= k``) and a decoration.  Untwisted modules with odd
``i`` carry ``+``/``-`` (the two are isomorphic), untwisted modules with even
``i`` carry one of four variants ``v1..v4``.  Twisted modules carry ``+``/``-``,
except at the half level ``i = k/2`` (``k`` even) where the module splits into
four simple variants.

Untwisted variants are written in the coordinates of one of the three
involutions (``basis``); :func:`canonicalize` translates everything to the
sigma_1 coordinates used by :func:`enumerate_labels`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

__all__ = [
    "Sector", "Dec", "Label", "LabelError",
    "sector_mul", "variant_mul", "variant_from_sigma", "variant_to_sigma",
    "canonicalize", "expand_half", "enumerate_labels", "label_count",
    "check_level", "parse_label", "format_label", "unit",
]


class LabelError(ValueError):
    """Raised for malformed or out-of-range module names."""


class Sector(enum.IntEnum):
    """Klein four-group element labelling a twisted sector.

    Encoded as two bits so that the group law is bitwise xor.
    """
    E = 0
    S1 = 1
    S2 = 2
    S3 = 3

    @property
    def tag(self) -> str:
        return "U" if self is Sector.E else f"T{int(self)}"


class Dec(enum.IntEnum):
    """Decoration; the integer order is the enumeration order."""
    PLUS = 0
    MINUS = 1
    V1 = 2
    V2 = 3
    V3 = 4
    V4 = 5

    @property
    def is_sign(self) -> bool:
        return self <= Dec.MINUS

    @property
    def variant(self) -> int:
        """Variant number 1..4 (only for ``V1..V4``)."""
        if self.is_sign:
            raise LabelError(f"{self.name} is not a variant decoration")
        return int(self) - 1

    @classmethod
    def from_variant(cls, j: int) -> Dec:
        if not 1 <= j <= 4:
            raise LabelError(f"variant index {j} outside 1..4")
        return cls(j + 1)

    @property
    def symbol(self) -> str:
        if self.is_sign:
            return "+" if self is Dec.PLUS else "-"
        return f"v{self.variant}"

    def flipped(self) -> Dec:
        if not self.is_sign:
            raise LabelError("only +/- decorations can be flipped")
        return Dec.MINUS if self is Dec.PLUS else Dec.PLUS


def sector_mul(a: Sector, b: Sector) -> Sector:
    return Sector(int(a) ^ int(b))


def variant_mul(a: int, b: int) -> int:
    """Product of variant indices: 1 is the identity, {2,3,4} multiply to the third."""
    return ((a - 1) ^ (b - 1)) + 1


# sigma_r-coordinate variant -> sigma_1 variant, for even weight index.
_TO_SIGMA1 = {
    # i in 4Z+2
    2: {2: {1: 1, 3: 2, 2: 3, 4: 4}, 3: {3: 1, 2: 2, 1: 3, 4: 4}},
    # i in 4Z
    0: {2: {1: 1, 3: 2, 2: 3, 4: 4}, 3: {1: 1, 4: 2, 3: 3, 2: 4}},
}
_FROM_SIGMA1 = {
    m: {r: {v1: vr for vr, v1 in table.items()} for r, table in by_r.items()}
    for m, by_r in _TO_SIGMA1.items()
}


def variant_from_sigma(r: int, i: int, j: int) -> int:
    """sigma_1 variant of the untwisted module L(k,i)^{sigma_r, j} (``i`` even)."""
    if i % 2:
        raise LabelError("variants exist only for even weight index")
    if r == 1:
        return j
    return _TO_SIGMA1[i % 4][r][j]


def variant_to_sigma(r: int, i: int, j: int) -> int:
    """Inverse of :func:`variant_from_sigma`: the sigma_r coordinate of variant ``j``."""
    if i % 2:
        raise LabelError("variants exist only for even weight index")
    if r == 1:
        return j
    return _FROM_SIGMA1[i % 4][r][j]


@dataclass(frozen=True)
class Label:
    """Module name; ``basis`` is only meaningful for untwisted variants."""
    sector: Sector
    i: int
    dec: Dec
    basis: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sector", Sector(self.sector))
        object.__setattr__(self, "dec", Dec(self.dec))
        if self.basis == 0:
            object.__setattr__(self, "basis", 1 if self.sector is Sector.E else int(self.sector))
        if self.basis not in (1, 2, 3):
            raise LabelError(f"basis must be 1, 2 or 3, got {self.basis}")
        if self.sector is not Sector.E and self.basis != int(self.sector):
            raise LabelError(
                f"twisted label in sector {self.sector.tag} cannot use sigma_{self.basis} coordinates")

    @property
    def twisted(self) -> bool:
        return self.sector is not Sector.E

    def sort_key(self) -> tuple[int, int, int]:
        return (int(self.sector), self.i, int(self.dec))

    def __lt__(self, other: Label) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_label(self)


def check_level(k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        raise LabelError(f"level must be an integer, got {k!r}")
    if k < 3:
        raise LabelError(f"level k={k} unsupported: the fusion rules are stated for k >= 3")
    return k


def is_half(label: Label, k: int) -> bool:
    return label.twisted and k % 2 == 0 and label.i == k // 2


def validate(label: Label, k: int) -> None:
    """Check that ``label`` is a well-formed raw name at level ``k``."""
    check_level(k)
    if not 0 <= label.i <= k:
        raise LabelError(f"weight index {label.i} outside 0..{k}")
    if label.twisted:
        if is_half(label, k):
            return
        if not label.dec.is_sign:
            raise LabelError(f"{format_label(label)}: variants exist only at the half level i=k/2")
        return
    if label.i % 2:
        if not label.dec.is_sign:
            raise LabelError(f"{format_label(label)}: odd weight index takes +/- only")
        if label.basis != 1:
            raise LabelError(f"{format_label(label)}: odd weight index has no sigma_{label.basis} form")
    elif label.dec.is_sign:
        raise LabelError(f"{format_label(label)}: even weight index takes v1..v4")


def canonicalize(label: Label, k: int) -> Label:
    """Return the canonical representative of ``label`` at level ``k``.

    Raises LabelError for a reducible half-level ``+``/``-`` sum; use
    :func:`expand_half` for those.
    """
    validate(label, k)
    if not label.twisted:
        if label.i % 2:
            return Label(Sector.E, label.i, Dec.PLUS)
        j = variant_from_sigma(label.basis, label.i, label.dec.variant)
        return Label(Sector.E, label.i, Dec.from_variant(j))
    if is_half(label, k):
        if label.dec.is_sign:
            raise LabelError(
                f"{format_label(label)} is a sum of two simple modules, not a simple module")
        return label
    if 2 * label.i > k:
        return Label(label.sector, k - label.i, label.dec)
    return label


def expand_half(sector: Sector, sign: Dec, k: int) -> dict[Label, int]:
    """Split the reducible half-level module of ``sector`` into its simple summands."""
    check_level(k)
    sector = Sector(sector)
    if k % 2:
        raise LabelError(f"k={k} is odd; there is no half-level module")
    if sector is Sector.E:
        raise LabelError("half-level modules live in twisted sectors")
    if sign is Dec.PLUS:
        variants = (1, 2)
    elif sign is Dec.MINUS:
        variants = (3, 4)
    else:
        raise LabelError("expand_half takes + or -")
    return {Label(sector, k // 2, Dec.from_variant(j)): 1 for j in variants}


def label_count(k: int) -> int:
    check_level(k)
    return 11 * (k + 1) // 2 if k % 2 else (11 * k + 32) // 2


def enumerate_labels(k: int) -> list[Label]:
    """All canonical labels at level ``k`` in the fixed total order."""
    check_level(k)
    out = []
    for i in range(k + 1):
        if i % 2:
            out.append(Label(Sector.E, i, Dec.PLUS))
        else:
            out.extend(Label(Sector.E, i, Dec.from_variant(j)) for j in range(1, 5))
    for sector in (Sector.S1, Sector.S2, Sector.S3):
        for i in range((k - 1) // 2 + 1):
            out.append(Label(sector, i, Dec.PLUS))
            out.append(Label(sector, i, Dec.MINUS))
        if k % 2 == 0:
            out.extend(Label(sector, k // 2, Dec.from_variant(j)) for j in range(1, 5))
    out.sort()
    assert len(out) == label_count(k)
    return out


def unit() -> Label:
    return Label(Sector.E, 0, Dec.V1)


_LABEL_RE = re.compile(r"^(U|T[123]):(\d+):(\+|-|v[1-4])(?::s([123]))?$")


def parse_label(text: str) -> Label:
    """Parse ``U:i:+``, ``U:i:v2``, ``T1:i:-``, ``T2:3:v3`` (optionally ``:s2``/``:s3``
    after an untwisted variant to give it in sigma_2/sigma_3 coordinates)."""
    m = _LABEL_RE.match(text.strip())
    if not m:
        raise LabelError(f"cannot parse module label {text!r}")
    tag, i, dec, basis = m.groups()
    sector = Sector.E if tag == "U" else Sector(int(tag[1]))
    signs = {"+": Dec.PLUS, "-": Dec.MINUS}
    dec = signs[dec] if dec in signs else Dec.from_variant(int(dec[1]))
    if basis and sector is not Sector.E:
        raise LabelError(f"{text!r}: basis suffix is only allowed on untwisted labels")
    return Label(sector, int(i), dec, int(basis) if basis else 0)


def format_label(label: Label) -> str:
    text = f"{label.sector.tag}:{label.i}:{label.dec.symbol}"
    if not label.twisted and label.basis != 1:
        text += f":s{label.basis}"
    return text
