"""Geometry of the Aloff-Wallach spaces W(p, q) = SU(3)/T(p, q)."""

from .curvature import (
    TwoPlane,
    base_curvature,
    base_curvature_operator,
    extremize_sectional,
    group_curvature,
    sectional_wpq,
)
from .euler import QuadratureSpec, integrate_volume, su3_point, volume_density
from .injectivity import CurvatureInterval, InjectivityBounds, bounds_wpq, berger_upper, cheeger_lower
from .pinching import coefficients, family_formulas, lambda_bar, lambda_hat, pinch, simplex_quadratic
from .structure import DegenerateIndexError, MetricSpec, WpqIndex, build_split, check_condition_II
from .volumes import VolumeBounds, orbit_length, vol_su3, vol_wpq_bounds

__version__ = "0.1.0"

__all__ = [
    "CurvatureInterval",
    "DegenerateIndexError",
    "InjectivityBounds",
    "MetricSpec",
    "QuadratureSpec",
    "TwoPlane",
    "VolumeBounds",
    "WpqIndex",
    "base_curvature",
    "base_curvature_operator",
    "berger_upper",
    "bounds_wpq",
    "build_split",
    "check_condition_II",
    "cheeger_lower",
    "coefficients",
    "extremize_sectional",
    "family_formulas",
    "group_curvature",
    "integrate_volume",
    "lambda_bar",
    "lambda_hat",
    "orbit_length",
    "pinch",
    "sectional_wpq",
    "simplex_quadratic",
    "su3_point",
    "vol_su3",
    "vol_wpq_bounds",
    "volume_density",
]
