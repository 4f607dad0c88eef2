"""Circle subgroups T(p, q), the reductive split T + V1 + V2, and the metrics.

For a pair of integers ``(p, q)`` the circle ``T(p, q)`` has Lie algebra
spanned by ``2*pi*i*diag(p, q, -(p+q))``.  The Killing-orthogonal
complement splits as ``V1 = T^perp & u`` and ``V2 = u^perp`` where ``u`` is
the Lie algebra of the block ``U(2)`` in the upper-left corner.
"""

from dataclasses import dataclass
from math import gcd
from typing import Literal

import numpy as np
from scipy.optimize import least_squares

from .su3 import (
    TOL,
    bracket,
    coordinates,
    exponential,
    _GM as _GM_ARRAY,
    gell_mann,
    killing,
    killing_norm,
)

Block = Literal["T", "V1", "V2"]


class DegenerateIndexError(ValueError):
    """Raised when an operation needs p, q and p + q all nonzero."""


@dataclass(frozen=True)
class WpqIndex:
    p: int
    q: int

    def __post_init__(self):
        if not all(isinstance(v, (int, np.integer)) for v in (self.p, self.q)):
            raise TypeError("p and q must be integers")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "q", int(self.q))
        if self.p == 0 and self.q == 0:
            raise ValueError("(p, q) = (0, 0) does not define a circle subgroup")

    @property
    def gcd(self):
        return gcd(abs(self.p), abs(self.q))

    @property
    def weights(self):
        return (self.p, self.q, -(self.p + self.q))

    @property
    def norm_sq(self):
        """``p^2 + pq + q^2``."""
        return self.p**2 + self.p * self.q + self.q**2

    @property
    def positively_curvable(self):
        return all(w != 0 for w in self.weights)

    @property
    def classification(self):
        return "positively-curvable" if self.positively_curvable else "degenerate"

    def require_positively_curvable(self):
        if not self.positively_curvable:
            raise DegenerateIndexError(
                f"W({self.p},{self.q}) is degenerate: p, q and p+q must all be nonzero"
            )

    def positive_representative(self):
        """Isometric index with ``0 < p <= q``.

        Among the weights ``(p, q, -p-q)`` exactly two share a sign; a signed
        permutation matrix in SU(3) conjugates ``T(p, q)`` onto the circle
        whose first two weights are that pair, preserving ``u`` and hence the
        metric construction.  Swapping the first two weights is also such a
        conjugation, so the pair is sorted.
        """
        self.require_positively_curvable()
        w = self.weights
        for i in range(3):
            for j in range(i + 1, 3):
                if (w[i] > 0) == (w[j] > 0):
                    a, b = sorted((abs(w[i]), abs(w[j])))
                    return WpqIndex(a, b)
        raise AssertionError("unreachable")  # pragma: no cover


def as_index(idx):
    if isinstance(idx, WpqIndex):
        return idx
    p, q = idx
    return WpqIndex(p, q)


def tangent_generator(idx):
    """``2*pi*i*diag(p, q, -(p+q))``, the derivative of the circle at theta = 0."""
    idx = as_index(idx)
    return 2j * np.pi * np.diag(np.array(idx.weights, dtype=float)).astype(complex)


@dataclass(frozen=True)
class ReductiveSplit:
    """Killing-orthonormal bases of T (1), V1 (3) and V2 (4)."""

    index: WpqIndex
    t_basis: np.ndarray
    v1_basis: np.ndarray
    v2_basis: np.ndarray

    @property
    def frame(self):
        """The combined 8-frame ordered T, V1, V2."""
        return np.concatenate([self.t_basis, self.v1_basis, self.v2_basis])

    @property
    def horizontal_frame(self):
        """The 7-frame of ``T^perp`` ordered V1, V2."""
        return np.concatenate([self.v1_basis, self.v2_basis])

    @property
    def dims(self):
        return (len(self.t_basis), len(self.v1_basis), len(self.v2_basis))

    def block_slices(self):
        return {"T": slice(0, 1), "V1": slice(1, 4), "V2": slice(4, 8)}

    def frame_coordinates(self, X):
        """Coordinates of ``X`` in :attr:`frame` (shape ``(..., 8)``)."""
        return killing(np.asarray(X)[..., None, :, :], self.frame)


def _u_spanning_set():
    return [1j * gell_mann(k) for k in (1, 2, 3, 8)]


def _u_perp_basis():
    # off-block matrices with third-row/column support
    return np.array([1j * gell_mann(k) for k in (4, 5, 6, 7)])


def build_split(idx):
    idx = as_index(idx)
    t = tangent_generator(idx)
    t = t / killing_norm(t)
    v1 = []
    for X in _u_spanning_set():
        Y = X - killing(X, t) * t
        for v in v1:
            Y = Y - killing(Y, v) * v
        n = killing_norm(Y)
        if n > 1e-8:
            v1.append(Y / n)
    if len(v1) != 3:
        raise AssertionError(f"V1 has dimension {len(v1)}, expected 3")
    return ReductiveSplit(
        index=idx,
        t_basis=t[None],
        v1_basis=np.array(v1),
        v2_basis=_u_perp_basis(),
    )


def project(X, split, block):
    """Killing-orthogonal projection of ``X`` onto one block of the split."""
    basis = {"T": split.t_basis, "V1": split.v1_basis, "V2": split.v2_basis}[block]
    c = killing(np.asarray(X)[..., None, :, :], basis)
    return np.einsum("...k,kij->...ij", c, basis)


@dataclass(frozen=True)
class MetricSpec:
    """Block scale factors of a left-invariant metric relative to Killing.

    ``base_ktilde`` carries ``coeff_t = 1`` only as a placeholder: quotient
    computations never see the T block.
    """

    coeff_t: float
    coeff_v1: float
    coeff_v2: float

    def __post_init__(self):
        if min(self.coeff_t, self.coeff_v1, self.coeff_v2) <= 0:
            raise ValueError("metric coefficients must be positive")

    @classmethod
    def killing(cls):
        return cls(1.0, 1.0, 1.0)

    @classmethod
    def wallach_w(cls):
        return cls(1.0, 0.5, 1.0)

    @classmethod
    def base_ktilde(cls):
        return cls(1.0, 0.5, 1.0)

    @property
    def diagonal(self):
        """Metric matrix in the split frame (diagonal, length 8)."""
        return np.array([self.coeff_t] + [self.coeff_v1] * 3 + [self.coeff_v2] * 4)

    def scaled(self, c):
        return MetricSpec(c * self.coeff_t, c * self.coeff_v1, c * self.coeff_v2)


def metric_eval(spec, split, X, Y):
    x = split.frame_coordinates(X)
    y = split.frame_coordinates(Y)
    return np.sum(spec.diagonal * x * y, axis=-1)


def metric_matrix(spec, split):
    """Matrix of ``spec`` in the Gell-Mann coordinates of :func:`su3.coordinates`."""
    F = coordinates(split.frame)  # rows: frame vectors
    return F.T @ np.diag(spec.diagonal) @ F


@dataclass(frozen=True)
class ConditionIIReport:
    residual_item1: float
    residual_item2: float
    residual_item3: float
    item4_samples: int
    item4_violations: int
    item4_margin: float = np.inf

    def holds(self, tol=1e-12):
        return (
            max(self.residual_item1, self.residual_item2, self.residual_item3) < tol
            and self.item4_violations == 0
        )


def _forbidden_residual(split, A, B, allowed):
    worst = 0.0
    blocks = ("T", "V1", "V2")
    for X in A:
        for Y in B:
            Z = bracket(X, Y)
            for blk in blocks:
                if blk not in allowed:
                    worst = max(worst, float(killing_norm(project(Z, split, blk))))
    return worst


def _haar_unitary(rng, n):
    z = (rng.normal(size=(n, 3, 3)) + 1j * rng.normal(size=(n, 3, 3))) / np.sqrt(2)
    Q, R = np.linalg.qr(z)
    d = np.diagonal(R, axis1=1, axis2=2)
    return Q * (d / np.abs(d))[:, None, :]


def _cartans_in_complement(idx, n, rng, iters=10):
    """Random unitaries ``U`` with ``U^* D U`` zero on the diagonal.

    ``D = diag(p, q, -p-q)``.  Such a ``U`` conjugates the diagonal Cartan
    subalgebra into ``T^perp``.  Starting from Haar samples, a minimum-norm
    Gauss-Newton iteration in the Lie algebra drives the two independent
    diagonal entries to zero.  Returns the converged unitaries.
    """
    D = np.diag(np.array(idx.weights, dtype=float)).astype(complex)
    D = D / np.linalg.norm(idx.weights)
    E = 1j * _GM_ARRAY
    U = _haar_unitary(rng, n)
    for _ in range(iters):
        M = np.conj(np.swapaxes(U, 1, 2)) @ D @ U
        c = np.real(np.diagonal(M, axis1=1, axis2=2))[:, :2]
        # d/da diag(e^{-aE} M e^{aE}) = diag([M, E])
        J = np.real(np.diagonal(bracket(M[:, None], E[None]), axis1=2, axis2=3))[..., :2]
        J = np.swapaxes(J, 1, 2)  # (n, 2, 8)
        step = -np.einsum("nij,nj->ni", np.linalg.pinv(J), c)
        U = U @ exponential(np.einsum("nk,kij->nij", step, E))
    M = np.conj(np.swapaxes(U, 1, 2)) @ D @ U
    res = np.max(np.abs(np.real(np.diagonal(M, axis1=1, axis2=2))), axis=1)
    return U[res < 1e-12]


def _item4_margins(split, U):
    h = 1j * _GM_ARRAY[[2, 7]]
    Ud = np.conj(np.swapaxes(U, -1, -2))
    x1 = project(U @ h[0] @ Ud, split, "V1")
    y1 = project(U @ h[1] @ Ud, split, "V1")
    return killing_norm(bracket(x1, y1))


def _refine_item4(split, U0):
    """Locally minimise ``|[x1, y1]|`` over Cartan subalgebras inside T^perp."""
    idx = split.index
    D = np.diag(np.array(idx.weights, dtype=float)).astype(complex)
    D = D / np.linalg.norm(idx.weights)
    E = 1j * _GM_ARRAY
    h = E[[2, 7]]

    def residual(a):
        U = U0 @ exponential(np.einsum("k,kij->ij", a, E))
        Ud = np.conj(U.T)
        diag = np.real(np.diag(Ud @ D @ U))[:2]
        br = bracket(project(U @ h[0] @ Ud, split, "V1"), project(U @ h[1] @ Ud, split, "V1"))
        # constraint rows weighted so the minimiser stays on the manifold
        return np.concatenate([10.0 * diag, coordinates(br)])

    sol = least_squares(residual, np.zeros(8), xtol=1e-14, ftol=1e-14, gtol=1e-14)
    return U0 @ exponential(np.einsum("k,kij->ij", sol.x, E))


def _item4_search(split, n, rng, tol, refine, chunk=4096):
    """Search for counterexamples to item 4 of condition II.

    Two commuting anti-Hermitian matrices are simultaneously diagonalisable,
    so every linearly independent commuting pair in ``T^perp`` spans a Cartan
    subalgebra contained in ``T^perp``, and item 4 can only fail on such a
    subalgebra.  We sample that set, measure ``|[x1, y1]|`` for an
    orthonormal basis ``x, y`` of each sample, then locally minimise from the
    ``refine`` smallest.  Returns ``(samples, violations, margin)``.
    """
    margins = []
    keep = []
    total = 0
    while total < n:
        U = _cartans_in_complement(split.index, min(chunk, n - total), rng)
        total += len(U)
        m = _item4_margins(split, U)
        margins.append(m)
        order = np.argsort(m)[:refine]
        keep.extend(zip(m[order], U[order]))
    margins = np.concatenate(margins) if margins else np.zeros(0)
    violations = int(np.sum(margins < tol))
    keep.sort(key=lambda t: t[0])
    best = float(margins.min()) if len(margins) else np.inf
    for m0, U0 in keep[:refine]:
        if m0 < tol:
            continue
        U = _refine_item4(split, U0)
        D = np.diag(np.array(split.index.weights, dtype=float))
        on_manifold = np.max(np.abs(np.diag(np.conj(U.T) @ D @ U).real)) < 1e-10
        if not on_manifold:
            continue
        m = float(_item4_margins(split, U))
        best = min(best, m)
        if m < tol:
            violations += 1
    return len(margins), violations, best


def check_condition_II(split, sample_budget=10_000, seed=0, tol=1e-9, refine=4):
    """Check the four bracket conditions on ``(V1, V2)``.

    Items 1-3 are checked on all basis pairs (a residual is the largest
    Killing norm of a forbidden component).  Item 4 has no finite decision
    procedure and is only searched for counterexamples, see
    :func:`_item4_search`.
    """
    v1, v2 = split.v1_basis, split.v2_basis
    r1 = _forbidden_residual(split, v1, v2, {"V2"})
    r2 = _forbidden_residual(split, v1, v1, {"T", "V1"})
    r3 = _forbidden_residual(split, v2, v2, {"T", "V1"})
    rng = np.random.default_rng(seed)
    samples, violations, margin = _item4_search(split, int(sample_budget), rng, tol, refine)
    return ConditionIIReport(r1, r2, r3, samples, violations, margin)


def ad_invariance_residual(split, samples=64, seed=0):
    """Largest leak of Ad(T(p, q)) conjugation out of V1 or V2.

    Conjugates each basis vector by ``exp(theta * t)`` for random theta and
    measures the component that leaves its block.
    """
    rng = np.random.default_rng(seed)
    t = tangent_generator(split.index)
    worst = 0.0
    for theta in rng.uniform(0, 1, size=samples):
        g = exponential(theta * t)
        gi = np.conj(g.T)
        for blk, basis in (("V1", split.v1_basis), ("V2", split.v2_basis)):
            for v in basis:
                w = g @ v @ gi
                worst = max(worst, float(killing_norm(w - project(w, split, blk))))
    return worst


def block_scale(spec):
    """Per-frame-vector length factors turning the split frame spec-orthonormal."""
    return 1.0 / np.sqrt(spec.diagonal)


__all__ = [
    "Block",
    "ConditionIIReport",
    "DegenerateIndexError",
    "MetricSpec",
    "ReductiveSplit",
    "TOL",
    "WpqIndex",
    "ad_invariance_residual",
    "as_index",
    "block_scale",
    "build_split",
    "check_condition_II",
    "metric_eval",
    "metric_matrix",
    "project",
    "tangent_generator",
]
