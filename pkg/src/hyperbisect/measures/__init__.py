"""Weighted point measures, residual maps and samplers."""

from hyperbisect.measures.discrete import (
    DiscreteMeasure,
    MeasureFamily,
    ResidualVector,
    SideMasses,
    is_bisecting,
    residual,
    side_masses,
)
from hyperbisect.measures.mollifier import MollifierConfig, evaluate_mollified, mollified_residual
from hyperbisect.measures.sampling import (
    check_general_position,
    clustered_family,
    delta_family,
    lower_bound_family,
    moment_curve,
    random_oddly_supported_family,
    sample_oddly_supported,
)

__all__ = [
    "DiscreteMeasure",
    "MeasureFamily",
    "MollifierConfig",
    "ResidualVector",
    "SideMasses",
    "check_general_position",
    "clustered_family",
    "delta_family",
    "evaluate_mollified",
    "is_bisecting",
    "lower_bound_family",
    "mollified_residual",
    "moment_curve",
    "random_oddly_supported_family",
    "residual",
    "sample_oddly_supported",
    "side_masses",
]
