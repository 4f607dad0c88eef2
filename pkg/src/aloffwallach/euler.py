"""Generalised Euler angles on SU(2) and SU(3) and volume integration.

SU(3) is parametrised (outside a null set) as

    g = s(phi, theta, psi) exp(i lambda_5 xi) s(alpha, beta, gamma) exp(i sqrt(3)/2 lambda_8 tau)

with ``s(x, y, z) = exp(i/2 x lambda_3) exp(i/2 y lambda_2) exp(i/2 z lambda_3)``.
Angle vectors are ordered ``(phi, theta, psi, xi, alpha, beta, gamma, tau)``.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .structure import metric_matrix
from .su3 import TOL, coordinates, gell_mann

TWO_PI = 2 * np.pi

# (low, high) per angle; tau's range is not stated alongside the others.
# 2*pi is the only length compatible with the closed-form density
# integrating to sqrt(3) pi^5.
SU3_RANGES = (
    (0.0, 4 * np.pi),  # phi
    (0.0, np.pi),  # theta
    (0.0, TWO_PI),  # psi
    (0.0, np.pi),  # xi
    (0.0, 4 * np.pi),  # alpha
    (0.0, np.pi),  # beta
    (0.0, TWO_PI),  # gamma
    (0.0, TWO_PI),  # tau
)
SU2_RANGES = ((0.0, 4 * np.pi), (0.0, np.pi), (0.0, TWO_PI))

# axes on which the volume density depends
ACTIVE_AXES = (1, 3, 5)


class EulerAnglesSU2(NamedTuple):
    phi: float
    theta: float
    psi: float


class EulerAnglesSU3(NamedTuple):
    phi: float
    theta: float
    psi: float
    xi: float
    alpha: float
    beta: float
    gamma: float
    tau: float


def in_chart(angles, ranges=SU3_RANGES):
    a = np.asarray(angles, dtype=float)
    lo = np.array([r[0] for r in ranges])
    hi = np.array([r[1] for r in ranges])
    return np.all((a >= lo) & (a < hi), axis=-1)


# Each Euler factor is exp(t * H) for a fixed generator H.
_GENERATORS = np.array(
    [
        0.5j * gell_mann(3),
        0.5j * gell_mann(2),
        0.5j * gell_mann(3),
        0.5j * gell_mann(5),
        0.5j * gell_mann(3),
        0.5j * gell_mann(2),
        0.5j * gell_mann(3),
        0.5j * np.sqrt(3) * gell_mann(8),
    ]
)
_GENERATORS.setflags(write=False)


def _diag3(d0, d1, d2):
    out = np.zeros(np.shape(d0) + (3, 3), dtype=complex)
    out[..., 0, 0] = d0
    out[..., 1, 1] = d1
    out[..., 2, 2] = d2
    return out


def _rot(t, i, j):
    """``[[cos t, sin t], [-sin t, cos t]]`` in rows/columns (i, j), identity elsewhere."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape + (3, 3), dtype=complex)
    out[..., 0, 0] = out[..., 1, 1] = out[..., 2, 2] = 1
    c, s = np.cos(t), np.sin(t)
    out[..., i, i] = c
    out[..., j, j] = c
    out[..., i, j] = s
    out[..., j, i] = -s
    return out


def _exp_l3(x):
    x = np.asarray(x, dtype=float)
    return _diag3(np.exp(0.5j * x), np.exp(-0.5j * x), np.ones_like(x))


def _exp_l2(y):
    return _rot(np.asarray(y, dtype=float) / 2, 0, 1)


def _exp_l5(xi):
    return _rot(np.asarray(xi, dtype=float) / 2, 0, 2)


def _exp_l8(tau):
    tau = np.asarray(tau, dtype=float)
    return _diag3(np.exp(0.5j * tau), np.exp(0.5j * tau), np.exp(-1j * tau))


_FACTORS = (_exp_l3, _exp_l2, _exp_l3, _exp_l5, _exp_l3, _exp_l2, _exp_l3, _exp_l8)


def su2_point(phi, theta, psi, embed=False):
    """``exp(i/2 phi sigma_3) exp(i/2 theta sigma_2) exp(i/2 psi sigma_3)``.

    With ``embed=True`` the result is placed in the upper-left block of a
    3x3 identity.
    """
    g = _exp_l3(phi) @ _exp_l2(theta) @ _exp_l3(psi)
    return g if embed else g[..., :2, :2]


def su2_angles_from_point(a, b, tol=TOL):
    """Euler angles of the SU(2) element ``[[a, b], [-conj(b), conj(a)]]``.

    Uses ``theta = 2 arccos|a|`` and the three-case rule on the arguments
    ``alpha = arg a``, ``beta = arg b`` (both taken in ``[0, 2 pi)``) that
    lands ``(phi, psi)`` in ``[0, 4 pi) x [0, 2 pi)``.
    """
    a, b = complex(a), complex(b)
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1) > tol:
        raise ValueError("|a|^2 + |b|^2 must equal 1")
    theta = 2 * np.arccos(min(abs(a), 1.0))
    al = np.angle(a) % TWO_PI
    be = np.angle(b) % TWO_PI if abs(b) > 0 else 0.0
    if al >= be:
        phi, psi = al + be, al - be
    elif al + be >= TWO_PI:
        phi, psi = al + be - TWO_PI, al - be + TWO_PI
    else:
        phi, psi = al + be + TWO_PI, al - be + TWO_PI
    return EulerAnglesSU2(phi, theta, psi)


def _factors(angles):
    a = np.asarray(angles, dtype=float)
    if a.shape[-1] != 8:
        raise ValueError(f"expected 8 Euler angles, got shape {a.shape}")
    return [f(a[..., k]) for k, f in enumerate(_FACTORS)]


def su3_point(angles):
    """The SU(3) element with the given generalised Euler angles."""
    g = None
    for F in _factors(angles):
        g = F if g is None else g @ F
    return g


def maurer_cartan_frame(angles):
    """Left-invariant pullbacks ``g^{-1} dg/d(angle_k)``, shape ``(..., 8, 3, 3)``.

    With ``g = F_1 ... F_8`` and ``F_k = exp(t_k H_k)``, the k-th element is
    ``R_k^{-1} H_k R_k`` where ``R_k = F_{k+1} ... F_8``.
    """
    F = _factors(angles)
    shape = F[0].shape[:-2]
    R = np.broadcast_to(np.eye(3, dtype=complex), shape + (3, 3))
    out = np.empty(shape + (8, 3, 3), dtype=complex)
    for k in range(7, -1, -1):
        out[..., k, :, :] = np.conj(np.swapaxes(R, -1, -2)) @ _GENERATORS[k] @ R
        R = F[k] @ R
    return out


def killing_density_closed_form(angles):
    """``sqrt(3)/512 sin(beta) sin(theta) sin(xi) sin^2(xi/2)``."""
    a = np.asarray(angles, dtype=float)
    theta, xi, beta = a[..., 1], a[..., 3], a[..., 5]
    return np.sqrt(3) / 512 * np.sin(beta) * np.sin(theta) * np.sin(xi) * np.sin(xi / 2) ** 2


def volume_density(angles, spec, split, strict=True):
    """``sqrt(det G)`` with ``G_ij`` the metric on the Maurer-Cartan frame.

    ``G = F M F^T`` with ``F`` the frame in Killing-orthonormal coordinates
    and ``M`` the metric matrix, so ``det G = det(F)^2 det(M)``; taking the
    determinant of ``F`` rather than of ``G`` halves the condition number near
    the chart boundary.

    Raises ``ValueError`` at chart-degenerate points (vanishing frame
    determinant) unless ``strict=False``, in which case those entries are NaN.
    """
    F = coordinates(maurer_cartan_frame(angles))  # (..., 8, 8)
    det_m = np.linalg.det(metric_matrix(spec, split))
    if det_m <= 0:
        raise ValueError("metric matrix is not positive definite")
    det_f = np.abs(np.linalg.det(F))
    bad = det_f <= 1e-150
    if np.any(bad):
        if strict:
            raise ValueError(
                f"degenerate Maurer-Cartan frame at {int(np.sum(bad))} chart point(s)"
            )
        det_f = np.where(bad, np.nan, det_f)
    return det_f * np.sqrt(det_m)


def gram_matrix(angles, spec, split):
    """``G_ij = spec(frame_i, frame_j)`` on the Maurer-Cartan frame."""
    F = coordinates(maurer_cartan_frame(angles))
    return F @ metric_matrix(spec, split) @ np.swapaxes(F, -1, -2)


@dataclass(frozen=True)
class QuadratureSpec:
    """How to integrate over the Euler box.

    ``scheme="gauss"`` uses a tensor Gauss-Legendre rule with ``nodes``
    points on each of theta, xi, beta and ``inert_nodes`` points on the five
    angles the density does not depend on.  ``scheme="monte-carlo"`` draws
    ``samples`` uniform points in the full 8-dimensional box.
    """

    scheme: str = "gauss"
    nodes: int = 32
    inert_nodes: int = 1
    samples: int = 100_000
    seed: int = 0
    chunk: int = 65_536

    def __post_init__(self):
        if self.scheme not in ("gauss", "monte-carlo"):
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")
        if min(self.nodes, self.inert_nodes, self.samples, self.chunk) < 1:
            raise ValueError("node and sample counts must be positive")


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    error: float
    evaluations: int


class QuadratureBudgetError(RuntimeError):
    def __init__(self, estimate, rtol):
        self.estimate = estimate
        super().__init__(
            f"quadrature error estimate {estimate.error:.3e} exceeds "
            f"requested rtol {rtol:g} (value {estimate.value:.12g})"
        )


def _box_volume():
    return float(np.prod([hi - lo for lo, hi in SU3_RANGES]))


def _gauss_rule(n_per_axis):
    """Tensor Gauss-Legendre nodes and weights over the Euler box."""
    pts, wts = [], []
    for (lo, hi), n in zip(SU3_RANGES, n_per_axis):
        x, w = np.polynomial.legendre.leggauss(n)
        pts.append(0.5 * (hi - lo) * x + 0.5 * (hi + lo))
        wts.append(0.5 * (hi - lo) * w)
    grids = np.meshgrid(*pts, indexing="ij")
    W = np.ones_like(grids[0])
    for k, w in enumerate(wts):
        shape = [1] * 8
        shape[k] = len(w)
        W = W * w.reshape(shape)
    return np.stack([g.ravel() for g in grids], axis=-1), W.ravel()


def _gauss(spec, split, nodes, inert, chunk):
    n_axis = [nodes if k in ACTIVE_AXES else inert for k in range(8)]
    X, W = _gauss_rule(n_axis)
    total = 0.0
    for s in range(0, len(X), chunk):
        total += float(np.sum(W[s : s + chunk] * volume_density(X[s : s + chunk], spec, split)))
    return total, len(X)


def integrate_volume(spec, split, quad=None, rtol=None):
    """Volume of SU(3) for the left-invariant metric ``spec``.

    Returns a :class:`VolumeEstimate`.  For Gauss rules the error estimate
    is the change against the rule with half as many nodes per active axis;
    for Monte Carlo it is one standard error.  When ``rtol`` is given and the
    estimate exceeds it, :class:`QuadratureBudgetError` is raised carrying
    the estimate.
    """
    quad = quad or QuadratureSpec()
    if quad.scheme == "gauss":
        value, n = _gauss(spec, split, quad.nodes, quad.inert_nodes, quad.chunk)
        coarse, m = _gauss(spec, split, max(1, quad.nodes // 2), quad.inert_nodes, quad.chunk)
        est = VolumeEstimate(value, abs(value - coarse), n + m)
    else:
        rng = np.random.default_rng(quad.seed)
        lo = np.array([r[0] for r in SU3_RANGES])
        hi = np.array([r[1] for r in SU3_RANGES])
        s1 = s2 = 0.0
        done = 0
        while done < quad.samples:
            m = min(quad.chunk, quad.samples - done)
            X = lo + (hi - lo) * rng.random((m, 8))
            f = volume_density(X, spec, split, strict=False)
            f = np.nan_to_num(f)
            s1 += float(np.sum(f))
            s2 += float(np.sum(f * f))
            done += m
        mean = s1 / done
        var = max(s2 / done - mean**2, 0.0)
        box = _box_volume()
        est = VolumeEstimate(box * mean, box * np.sqrt(var / done), done)
    if rtol is not None and est.error > rtol * abs(est.value):
        raise QuadratureBudgetError(est, rtol)
    return est


def random_su3(rng, n=None):
    """Haar-distributed SU(3) matrices."""
    size = () if n is None else (n,)
    z = (rng.normal(size=size + (3, 3)) + 1j * rng.normal(size=size + (3, 3))) / np.sqrt(2)
    Q, R = np.linalg.qr(z)
    d = np.diagonal(R, axis1=-2, axis2=-1)
    Q = Q * (d / np.abs(d))[..., None, :]
    det = np.linalg.det(Q)
    return Q / (det ** (1 / 3))[..., None, None]


def su3_angles_from_point(g, seed=0, restarts=32, tol=1e-10):
    """Numerically invert the Euler chart at ``g``.

    Bounded least squares on ``|su3_point(angles) - g|`` from random starts
    inside the chart box; returns ``(angles, residual)`` for the best start.  Used to check that the chart covers SU(3) up to a
    null set.
    """
    from scipy.optimize import least_squares

    g = np.asarray(g, dtype=complex)
    rng = np.random.default_rng(seed)
    lo = np.array([r[0] for r in SU3_RANGES])
    hi = np.array([r[1] for r in SU3_RANGES])

    def resid(a):
        d = su3_point(a) - g
        return np.concatenate([d.real.ravel(), d.imag.ravel()])

    best = None
    for _ in range(restarts):
        x0 = lo + (hi - lo) * rng.uniform(0.01, 0.99, 8)
        sol = least_squares(resid, x0, bounds=(lo, hi), xtol=1e-15, ftol=1e-15, gtol=1e-15)
        r = float(np.max(np.abs(resid(sol.x))))
        if best is None or r < best[1]:
            best = (sol.x, r)
        if r < tol:
            break
    angles, r = best
    return EulerAnglesSU3(*angles), r
