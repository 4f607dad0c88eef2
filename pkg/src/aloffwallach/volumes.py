"""Orbit lengths, SU(3) volumes and two-sided volume bounds for W(p, q)."""

from dataclasses import dataclass
from math import pi, sqrt
from typing import Optional

import numpy as np
from scipy.integrate import quad

from .structure import MetricSpec, as_index, tangent_generator
from .su3 import exponential, killing

VOL_SU3_KILLING = sqrt(3) * pi**5


@dataclass(frozen=True)
class VolumeBounds:
    lower: float
    upper: float
    exact: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.lower <= self.upper:
            raise ValueError("volume bounds must satisfy 0 < lower <= upper")
        if self.exact is not None and not self.lower <= self.exact <= self.upper:
            raise ValueError("exact volume lies outside its bounds")


def orbit_length(idx):
    """Killing length of the circle T(p, q): ``2 pi sqrt(p^2 + pq + q^2) / gcd``."""
    idx = as_index(idx)
    return 2 * pi * sqrt(idx.norm_sq) / idx.gcd


def orbit_length_numeric(idx, epsabs=1e-13):
    """Arclength of ``theta -> exp(theta t)`` over one period, by quadrature.

    The tangent vector at ``theta`` is ``exp(theta t) t``; its Killing norm
    is integrated over ``[0, 1/gcd]``.
    """
    idx = as_index(idx)
    t = tangent_generator(idx)

    def speed(theta):
        v = exponential(theta * t) @ t
        return np.sqrt(killing(v, v))

    value, _ = quad(speed, 0.0, 1.0 / idx.gcd, epsabs=epsabs, epsrel=1e-13)
    return value


def vol_su3(spec):
    """Volume of SU(3) for the Killing metric or the metric w.

    Both are left-invariant, so their volume forms differ by the constant
    ``sqrt(det)`` of the block scaling: ``(1/2)^(3/2)`` for w.
    """
    if spec == MetricSpec.killing():
        return VOL_SU3_KILLING
    if spec == MetricSpec.wallach_w():
        return VOL_SU3_KILLING * sqrt(spec.coeff_t * spec.coeff_v1**3 * spec.coeff_v2**4)
    raise ValueError(f"no closed-form SU(3) volume for {spec}")


def vol_wpq_bounds(idx):
    idx = as_index(idx)
    base = sqrt(3) * pi**4 * idx.gcd / sqrt(idx.norm_sq)
    exact = vol_su3(MetricSpec.wallach_w()) / orbit_length(idx)
    return VolumeBounds(lower=base / 32, upper=base / 2, exact=exact)
