"""Exact finite geometry of PG(2, q^3) under field reduction into PG(8, q)."""

from .gf import FieldSpec, FiniteField, field_tower, params_for
from .pg import ProjectiveSpace, Subspace, projective_space
from .reduction import PointType2, PointType8, ReductionContext, context
from .report import Claim, Report
from .suites import SUITES, run_suite

__all__ = [
    "FieldSpec",
    "FiniteField",
    "field_tower",
    "params_for",
    "ProjectiveSpace",
    "Subspace",
    "projective_space",
    "PointType2",
    "PointType8",
    "ReductionContext",
    "context",
    "Claim",
    "Report",
    "SUITES",
    "run_suite",
]

__version__ = "0.1.0"
