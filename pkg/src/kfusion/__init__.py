"""Exact fusion rings for the Klein-group orbifolds L(k,0)^K of affine sl_2."""

from .cyclo import CycNumber, qdim, sin_value
from .fusion import ConflictError, FusionOutcome, FusionTable, IncompleteError, build_table, fuse
from .labels import Dec, Label, Sector, canonicalize, enumerate_labels, expand_half, parse_label
from .verify import VerificationReport, verify_all

__all__ = [
    "CycNumber", "qdim", "sin_value",
    "ConflictError", "FusionOutcome", "FusionTable", "IncompleteError", "build_table", "fuse",
    "Dec", "Label", "Sector", "canonicalize", "enumerate_labels", "expand_half", "parse_label",
    "VerificationReport", "verify_all",
]
