"""Invariant Selmer dimension of elliptic curves in Kummer layers over Q(zeta_p).

The aggregate module evaluates the per-place decision table; the formal
and tower modules brute-force the local formal-group norm computations
that the table is built from.
"""

from .aggregate import SelmerReport, contributing_places, scan_m, selmer_dimension
from .curves import (
    CurveQ,
    FrobeniusData,
    ReductionType,
    check_hypotheses,
    curve_from_a_invariants,
    derive_invariants,
    ordinary_or_supersingular,
    point_count,
    reduction_at,
    torsion_dimension,
    trace_of_frobenius,
)
from .cyclotomic import PlaceK, SplitBehavior, behavior_in_Lm, normalize_m, place_over
from .formal import FgSeries, formal_group_of_curve, symmetric_norm_series
from .localdelta import LocalContribution, UnitSymbolInput, compute_unit_symbol
from .tower import (
    RamificationData,
    build_tower,
    norm_cokernel_dimension,
    tame_jump_tower,
    trace_ideal_exponents,
)

__all__ = [
    "CurveQ", "FrobeniusData", "ReductionType", "PlaceK", "SplitBehavior",
    "LocalContribution", "UnitSymbolInput", "SelmerReport", "FgSeries",
    "RamificationData",
    "derive_invariants", "curve_from_a_invariants", "check_hypotheses",
    "reduction_at", "ordinary_or_supersingular", "trace_of_frobenius",
    "point_count", "torsion_dimension",
    "place_over", "normalize_m", "behavior_in_Lm",
    "compute_unit_symbol",
    "contributing_places", "selmer_dimension", "scan_m",
    "formal_group_of_curve", "symmetric_norm_series",
    "build_tower", "tame_jump_tower", "trace_ideal_exponents",
    "norm_cokernel_dimension",
]

__version__ = "0.1.0"
