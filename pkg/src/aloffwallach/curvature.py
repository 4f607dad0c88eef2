"""Numerical curvature of SU(3) with left-invariant metrics and of W(p, q).

Group curvature comes from the Koszul formula on an orthonormal
left-invariant frame,

    <nabla_X Y, Z> = 1/2 (<[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>),

and the quotient curvature from the submersion SU(3) -> W(p, q): for
horizontal X, Y

    Rm_W(X, Y, Y, X) = Rm_G(X, Y, Y, X) + 3/4 |[X, Y]_T|^2_w.

Convention: ``Rm(X, Y, Z, W) = g(R(X, Y)Z, W)`` with
``R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]``, so the
sectional curvature of an orthonormal pair is ``Rm(X, Y, Y, X)``.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.optimize import minimize

from .structure import MetricSpec, as_index, build_split, metric_eval
from .su3 import TOL, structure_constants

PAIRS = tuple(combinations(range(7), 2))
_PA = np.array([a for a, _ in PAIRS])
_PB = np.array([b for _, b in PAIRS])


@dataclass(frozen=True)
class TwoPlane:
    """Two tangent vectors at the base point of W(p, q), given in ``T^perp``."""

    X: np.ndarray
    Y: np.ndarray


@dataclass(frozen=True)
class CurvatureTable:
    """Riemann tensor components on an orthonormal frame.

    ``frame`` lists the frame vectors as algebra elements and ``scale`` the
    factors with ``frame[a] = scale[a] * split.frame[a]`` (group level) or
    ``scale[a] * split.horizontal_frame[a]`` (base level).
    """

    rm: np.ndarray
    frame: np.ndarray
    scale: np.ndarray
    structure: np.ndarray = field(repr=False)

    @property
    def dim(self):
        return self.rm.shape[0]

    def quartic(self, x, y):
        """``Rm(x, y, y, x)`` for coordinate vectors (broadcasts over rows)."""
        return np.einsum("abcd,...a,...b,...c,...d->...", self.rm, x, y, y, x)

    def sectional(self, x, y):
        x, y = np.asarray(x, float), np.asarray(y, float)
        gram = np.sum(x * x, -1) * np.sum(y * y, -1) - np.sum(x * y, -1) ** 2
        if np.any(gram < TOL):
            raise ValueError("degenerate plane: vectors are (nearly) linearly dependent")
        return self.quartic(x, y) / gram

    def symmetry_residuals(self):
        R = self.rm
        bianchi = R + np.einsum("bcad->abcd", R) + np.einsum("cabd->abcd", R)
        return {
            "antisym_ab": float(np.max(np.abs(R + np.swapaxes(R, 0, 1)))),
            "antisym_cd": float(np.max(np.abs(R + np.swapaxes(R, 2, 3)))),
            "pair_sym": float(np.max(np.abs(R - np.transpose(R, (2, 3, 0, 1))))),
            "bianchi": float(np.max(np.abs(bianchi))),
        }


def koszul_curvature(C):
    """Curvature tensor from structure constants of an orthonormal frame.

    ``C[a, b, c] = <[E_a, E_b], E_c>``.  Returns ``rm[a, b, c, d]``.
    """
    gamma = 0.5 * (C - np.einsum("bca->abc", C) + np.einsum("cab->abc", C))
    return (
        np.einsum("bcm,amd->abcd", gamma, gamma)
        - np.einsum("acm,bmd->abcd", gamma, gamma)
        - np.einsum("abm,mcd->abcd", C, gamma)
    )


def group_curvature(spec, split):
    """Curvature of SU(3) with the left-invariant metric ``spec``."""
    c = structure_constants(split.frame)
    s = 1.0 / np.sqrt(spec.diagonal)
    C = c * s[:, None, None] * s[None, :, None] / s[None, None, :]
    rm = koszul_curvature(C)
    frame = split.frame * s[:, None, None]
    for arr in (rm, frame, s, C):
        arr.setflags(write=False)
    return CurvatureTable(rm=rm, frame=frame, scale=s, structure=C)


def group_coordinates(table, split, X):
    """Coordinates of algebra elements in the frame of a group-level table."""
    return split.frame_coordinates(X) / table.scale


def group_sectional(table, split, X, Y):
    return table.sectional(group_coordinates(table, split, X), group_coordinates(table, split, Y))


def _lift(h):
    """Horizontal 7-coordinates -> group 8-coordinates (T slot zero)."""
    h = np.asarray(h, float)
    return np.concatenate([np.zeros(h.shape[:-1] + (1,)), h], axis=-1)


def base_quartic(group, h1, h2):
    """``Rm_W(X, Y, Y, X)`` for horizontal coordinate vectors in the w-frame.

    The T-coordinate of ``[X, Y]`` is read off the structure constants; the
    T block of w has unit scale so its w-norm is that coordinate.
    """
    x, y = _lift(h1), _lift(h2)
    vert = np.einsum("ab,...a,...b->...", group.structure[:, :, 0], x, y)
    return group.quartic(x, y) + 0.75 * vert**2


def _polarize(quartic, n):
    """Recover a curvature tensor from its biquadratic form ``Q(x, y) = R(x, y, y, x)``.

    ``6 R(X, Y, Z, W)`` is the ``st`` coefficient of
    ``Q(X + sW, Y + tZ) - Q(X + sZ, Y + tW)``, extracted exactly by the
    mixed difference over ``s, t = +-1``.
    """
    I = np.eye(n)
    a, b, c, d = np.meshgrid(*(np.arange(n),) * 4, indexing="ij")
    a, b, c, d = (v.ravel() for v in (a, b, c, d))
    total = np.zeros(len(a))
    for s, t, w in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
        total += w * quartic(I[a] + s * I[d], I[b] + t * I[c])
        total -= w * quartic(I[a] + s * I[c], I[b] + t * I[d])
    return (total / 24).reshape((n,) * 4)


@lru_cache(maxsize=256)
def _base_curvature_cached(p, q):
    idx = as_index((p, q))
    split = build_split(idx)
    group = group_curvature(MetricSpec.wallach_w(), split)
    rm = _polarize(lambda x, y: base_quartic(group, x, y), 7)
    scale = group.scale[1:]
    frame = split.horizontal_frame * scale[:, None, None]
    C = group.structure
    for arr in (rm, frame, scale):
        arr.setflags(write=False)
    return split, group, CurvatureTable(rm=rm, frame=frame, scale=scale, structure=C)


def base_curvature(idx):
    """``(split, group_table, base_table)`` for W(p, q) with the metric k-tilde.

    The base table lives on the k-tilde-orthonormal 7-frame of ``T^perp``
    (V1 vectors scaled by sqrt(2)), ordered V1 then V2.
    """
    idx = as_index(idx)
    return _base_curvature_cached(idx.p, idx.q)


def base_tensor_oneill(idx):
    """Base curvature tensor from the full O'Neill formula (independent route).

    ``Rm_W(X,Y,Z,W) = Rm_G(X,Y,Z,W) + 2<A_X Y, A_W Z> - <A_X Z, A_Y W> + <A_Y Z, A_X W>``
    with ``A_X Y = 1/2 [X, Y]_T`` on horizontal left-invariant fields.
    """
    _, group, _ = base_curvature(idx)
    A = 0.5 * group.structure[1:, 1:, 0]
    RG = group.rm[1:, 1:, 1:, 1:]
    return (
        RG
        + 2 * np.einsum("ab,dc->abcd", A, A)
        - np.einsum("ac,bd->abcd", A, A)
        + np.einsum("bc,ad->abcd", A, A)
    )


def horizontal_coordinates(idx, X):
    """k-tilde-orthonormal coordinates of elements of ``T^perp``."""
    split, _, base = base_curvature(idx)
    return split.frame_coordinates(X)[..., 1:] / base.scale


def sectional_wpq(idx, plane, tol=1e-8):
    """Sectional curvature of W(p, q) on the plane spanned by ``plane.X, plane.Y``.

    The vectors must lie in ``T^perp`` and be k-tilde-orthonormal.
    """
    idx = as_index(idx)
    split, _, base = base_curvature(idx)
    ktilde = MetricSpec.base_ktilde()
    X, Y = np.asarray(plane.X), np.asarray(plane.Y)
    for V in (X, Y):
        if abs(float(split.frame_coordinates(V)[0])) > tol:
            raise ValueError("plane vectors must lie in T^perp")
    g = [[metric_eval(ktilde, split, U, V) for V in (X, Y)] for U in (X, Y)]
    if abs(g[0][0] - 1) > tol or abs(g[1][1] - 1) > tol or abs(g[0][1]) > tol:
        raise ValueError("plane vectors must be k-tilde-orthonormal")
    return float(base.sectional(horizontal_coordinates(idx, X), horizontal_coordinates(idx, Y)))


@dataclass(frozen=True)
class OperatorSpectrum:
    matrix: np.ndarray
    eigenvalues: np.ndarray
    pairs: tuple = PAIRS


def operator_matrix(rm):
    """Curvature operator on the coordinate bivectors ``e_a ^ e_b`` (a < b).

    Entry ``((a,b), (c,d)) = Rm(e_a, e_b, e_d, e_c)`` so the diagonal holds
    sectional curvatures of coordinate planes.
    """
    return rm[_PA[:, None], _PB[:, None], _PB[None, :], _PA[None, :]]


def base_curvature_operator(idx):
    _, _, base = base_curvature(idx)
    M = operator_matrix(base.rm)
    M = 0.5 * (M + M.T)
    ev = np.linalg.eigvalsh(M)
    M.setflags(write=False)
    ev.setflags(write=False)
    return OperatorSpectrum(matrix=M, eigenvalues=ev)


def _bivectors(x, y):
    return x[..., _PA] * y[..., _PB] - x[..., _PB] * y[..., _PA]


def _plane_values(op, x, y):
    w = _bivectors(x, y)
    return np.einsum("...i,ij,...j->...", w, op, w)


@dataclass(frozen=True)
class ExtremizeResult:
    k_min: float
    k_max: float
    argmin_plane: TwoPlane
    argmax_plane: TwoPlane
    spread_estimate: dict
    converged: bool
    sweeps: int


def _refine(op, Q, sign, tol, max_sweeps):
    """Jacobi-style rotation sweeps on orthonormal frames ``Q`` (R, 7, 7).

    Columns 0 and 1 span the plane, columns 2.. its complement.  Rotating
    plane vector ``i`` towards complement vector ``j`` by ``t`` changes the
    sectional curvature as ``a + b cos 2t + c sin 2t``; three evaluations fix
    ``a, b, c`` and the optimal ``t`` is taken in closed form.  ``sign`` is
    +1 to minimise, -1 to maximise.
    """
    Q = Q.copy()
    R = len(Q)
    rows = np.arange(R)
    for sweep in range(1, max_sweeps + 1):
        before = _plane_values(op, Q[:, :, 0], Q[:, :, 1])
        for i in (0, 1):
            o = 1 - i
            for j in range(2, 7):
                qi, qj, qo = Q[:, :, i], Q[:, :, j], Q[:, :, o]
                k0 = _plane_values(op, qi, qo)
                k1 = _plane_values(op, (qi + qj) / np.sqrt(2), qo)
                k2 = _plane_values(op, qj, qo)
                a = 0.5 * (k0 + k2)
                b = 0.5 * (k0 - k2)
                c = k1 - a
                t = 0.5 * np.arctan2(-sign * c, -sign * b)
                ct, st = np.cos(t)[:, None], np.sin(t)[:, None]
                new_i = ct * qi + st * qj
                new_j = -st * qi + ct * qj
                Q[rows, :, i] = new_i
                Q[rows, :, j] = new_j
        after = _plane_values(op, Q[:, :, 0], Q[:, :, 1])
        if np.max(np.abs(after - before)) < tol:
            return Q, after, True, sweep
    return Q, _plane_values(op, Q[:, :, 0], Q[:, :, 1]), False, max_sweeps


def _polish(op, Q, sign, top=5):
    """BFGS on the best ``top`` frames; rotation sweeps crawl in flat valleys."""

    def f(z):
        x, y = z[:7], z[7:]
        gram = (x @ x) * (y @ y) - (x @ y) ** 2
        return sign * float(_plane_values(op, x, y)) / gram

    vals = sign * _plane_values(op, Q[:, :, 0], Q[:, :, 1])
    best = None
    for i in np.argsort(vals, kind="stable")[:top]:
        res = minimize(f, np.concatenate([Q[i, :, 0], Q[i, :, 1]]), method="BFGS",
                       options={"gtol": 1e-12, "maxiter": 2000})
        if best is None or res.fun < best.fun:
            best = res
    x, y = best.x[:7], best.x[7:]
    x = x / np.linalg.norm(x)
    y = y - (y @ x) * x
    y = y / np.linalg.norm(y)
    return sign * best.fun, x, y, bool(best.success or best.status == 2)


def extremize_sectional(idx, budget=10_000, seed=0, restarts=200, tol=1e-10, max_sweeps=300):
    """Minimum and maximum sectional curvature of W(p, q) by multi-start search.

    ``budget`` random planes are screened; the ``restarts`` lowest and
    highest are refined by :func:`_refine` until the largest change in a
    sweep drops below ``tol`` (or ``max_sweeps``), then the best few are
    polished by BFGS.  ``spread_estimate`` reports how the refined restarts
    disperse around the best value.  Deterministic for a given seed.
    """
    idx = as_index(idx)
    if budget < 1000:
        raise ValueError("budget must be at least 1000 planes")
    split, _, base = base_curvature(idx)
    op = np.asarray(operator_matrix(base.rm))
    rng = np.random.default_rng(seed)
    Z = rng.normal(size=(budget, 7, 7))
    Q, _ = np.linalg.qr(Z)
    screen = _plane_values(op, Q[:, :, 0], Q[:, :, 1])
    order = np.argsort(screen, kind="stable")
    r = min(restarts, budget)

    Qmin, vmin, _, smin = _refine(op, Q[order[:r]], +1, tol, max_sweeps)
    Qmax, vmax, _, smax = _refine(op, Q[order[::-1][:r]], -1, tol, max_sweeps)
    kmin, xmin, ymin, cmin = _polish(op, Qmin, +1)
    kmax, xmax, ymax, cmax = _polish(op, Qmax, -1)

    def plane(x, y):
        F = base.frame
        return TwoPlane(np.einsum("k,kij->ij", x, F), np.einsum("k,kij->ij", y, F))

    spread = {
        "min_hits": int(np.sum(vmin - kmin < 1e-6)),
        "max_hits": int(np.sum(kmax - vmax < 1e-6)),
        "min_std": float(np.std(vmin)),
        "max_std": float(np.std(vmax)),
        "restarts": r,
    }
    return ExtremizeResult(
        k_min=float(kmin),
        k_max=float(kmax),
        argmin_plane=plane(xmin, ymin),
        argmax_plane=plane(xmax, ymax),
        spread_estimate=spread,
        converged=bool(cmin and cmax),
        sweeps=max(smin, smax),
    )
