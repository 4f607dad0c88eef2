"""Injectivity radius bounds from volume and curvature.

The lower bound is the Cheeger-type estimate

    i(M) >= min{ pi / sqrt(Delta),
                 pi Vol(M)/Vol(S^n) s_delta(min{d(M), pi/(2 sqrt(delta))})^(1-n) }

and its diameter-free simplification with ``s_delta^(1-n) >= delta^((n-1)/2)``.
The upper bound inverts Berger's inequality ``Vol(M) >= (i/pi)^m Vol(S^m)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, pi, sqrt
from typing import Optional

import numpy as np

from .structure import as_index
from .volumes import vol_wpq_bounds

DIM_WPQ = 7

W11_CURVATURE = (Fraction(2, 37), Fraction(29, 8))


@dataclass(frozen=True)
class CurvatureInterval:
    delta: float
    Delta: float

    def __post_init__(self):
        if self.delta > self.Delta:
            raise ValueError("curvature interval must have delta <= Delta")


@dataclass(frozen=True)
class InjectivityBounds:
    lower: float
    upper: float
    binding_branch: str  # "conjugate-point" or "volume"

    def __post_init__(self):
        if not 0 < self.lower <= self.upper:
            raise ValueError(f"injectivity bounds out of order: {self.lower} > {self.upper}")


def s_delta(delta, t):
    """Solution of ``f'' + delta f = 0`` with ``f(0) = 0``, ``f'(0) = 1``."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    if delta > 0:
        r = sqrt(delta)
        return np.sin(r * t) / r
    if delta < 0:
        r = sqrt(-delta)
        return np.sinh(r * t) / r
    return t


def _gamma_half(k):
    """``Gamma(k/2)`` for a positive integer ``k`` via the half-integer recursion."""
    if k % 2 == 0:
        return float(factorial(k // 2 - 1))
    n = (k - 1) // 2  # Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
    return factorial(2 * n) * sqrt(pi) / (4**n * factorial(n))


def vol_sphere(m):
    """Volume of the unit round ``S^m``: ``2 pi^((m+1)/2) / Gamma((m+1)/2)``."""
    if m < 1:
        raise ValueError("sphere dimension must be >= 1")
    return 2 * pi ** ((m + 1) / 2) / _gamma_half(m + 1)


def _branches(vol_lower, interval, dim, diameter):
    if vol_lower <= 0:
        raise ValueError("volume lower bound must be positive")
    if interval.delta <= 0:
        raise ValueError("the lower curvature bound delta must be positive")
    if dim < 2:
        raise ValueError("dimension must be >= 2")
    conj = pi / sqrt(interval.Delta) if interval.Delta > 0 else np.inf
    ratio = pi * vol_lower / vol_sphere(dim)
    if diameter is None:
        vol = ratio * interval.delta ** ((dim - 1) / 2)
    else:
        t = min(diameter, pi / (2 * sqrt(interval.delta)))
        vol = ratio * float(s_delta(interval.delta, t)) ** (1 - dim)
    return conj, vol


def cheeger_lower(vol_lower, interval, dim=DIM_WPQ, diameter=None):
    """Cheeger-type lower bound on the injectivity radius.

    Without ``diameter`` the diameter-free form is used; with it, the full
    estimate, which is never smaller.
    """
    return min(_branches(vol_lower, interval, dim, diameter))


def berger_upper(vol_upper, dim=DIM_WPQ):
    if vol_upper <= 0:
        raise ValueError("volume upper bound must be positive")
    return pi * (vol_upper / vol_sphere(dim)) ** (1 / dim)


def curvature_interval_for(idx, source="pinching", oracle_budget=10_000, seed=0):
    """Sectional curvature interval of W(p, q) from one of three sources.

    ``"pinching"`` uses the closed-form machinery, ``"oracle"`` the numerical
    extremisation, and ``"huang-constants"`` the W(1, 1) values 2/37 and 29/8,
    available only when p = q since curvature depends on p/q alone.
    """
    idx = as_index(idx)
    idx.require_positively_curvable()
    if source == "huang-constants":
        rep = idx.positive_representative()
        if rep.p != rep.q:
            raise ValueError(f"the W(1,1) constants only apply to p/q = 1, not W({idx.p},{idx.q})")
        return CurvatureInterval(float(W11_CURVATURE[0]), float(W11_CURVATURE[1]))
    if source == "pinching":
        from .pinching import pinch

        res = pinch(idx, oracle_budget=oracle_budget, seed=seed)
        return CurvatureInterval(res.k_min, res.k_max)
    if source == "oracle":
        from .curvature import extremize_sectional

        rep = idx.positive_representative()
        ext = extremize_sectional(rep, budget=oracle_budget, seed=seed)
        return CurvatureInterval(ext.k_min, ext.k_max)
    raise ValueError(f"unknown curvature source {source!r}")


def bounds_wpq(
    idx,
    curvature_source="pinching",
    oracle_budget=10_000,
    seed=0,
    interval: Optional[CurvatureInterval] = None,
):
    """Two-sided injectivity radius bounds for W(p, q) (dimension 7)."""
    idx = as_index(idx)
    if interval is None:
        interval = curvature_interval_for(idx, curvature_source, oracle_budget, seed)
    vb = vol_wpq_bounds(idx)
    conj, vol = _branches(vb.lower, interval, DIM_WPQ, None)
    return InjectivityBounds(
        lower=min(conj, vol),
        upper=berger_upper(vb.upper, DIM_WPQ),
        binding_branch="conjugate-point" if conj <= vol else "volume",
    )
