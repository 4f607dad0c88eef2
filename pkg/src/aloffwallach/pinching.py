"""Closed-form pinching constants for W(p, q).

The curvature operator of W(p, q), modified by invariant 4-forms, splits
into a 3x3 block ``A`` and 2x2 blocks indexed by ``j = 0, 1, 2`` whose
entries are the coefficients ``a_j, b_j, c_j, d_j, xi_j``.  From them:

* ``lambda_hat = max_x min_j lambda_j(x)`` over lower hyperbola branches,
* ``lambda_bar = min x^T A x`` over the probability simplex,
* ``K_min = min(lambda_hat, lambda_bar)`` and, under two sufficient
  conditions, ``K_max = Lambda_0 = max(a_0, a_1, a_2, c_0)``.

Rational quantities are kept as :class:`fractions.Fraction`; the ``xi_j``
carry one square root and are stored both as floats and through their
rational squares.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .structure import DegenerateIndexError, as_index

D_FIXED = (Fraction(5, 8), Fraction(1, 8), Fraction(1, 8))
TWO_37 = Fraction(2, 37)
TWENTY_NINE_8 = Fraction(29, 8)


class CurvatureUnavailableError(RuntimeError):
    """Closed-form gates failed and no numerical fallback was allowed."""


@dataclass(frozen=True)
class PinchCoefficients:
    p: int
    q: int
    a: tuple
    b: tuple
    c: tuple
    d: tuple
    xi: tuple
    xi_unit: tuple = field(repr=False)  # xi_j = xi_unit[j] * sqrt(3 / s) / 8

    def xi_sq(self, j, k):
        """``(xi_j - xi_k)^2`` as an exact rational."""
        s = self.p**2 + self.p * self.q + self.q**2
        return Fraction(3 * (self.xi_unit[j] - self.xi_unit[k]) ** 2, 64 * s)

    def floats(self, name):
        return np.array([float(v) for v in getattr(self, name)])


def coefficients(idx):
    """Coefficient table for the modified curvature operator of W(p, q).

    Uses the literal ``(p, q)``; callers wanting curvature of an arbitrary
    positively-curvable index should pass its positive representative.
    """
    idx = as_index(idx)
    if not idx.positively_curvable:
        raise DegenerateIndexError(f"W({idx.p},{idx.q}) has no positively curved normal metric")
    p, q = idx.p, idx.q
    s = p * p + p * q + q * q
    F = Fraction
    a = (8 - F(9 * (p + q) ** 2, 2 * s), 4 - F(9 * p * p, 8 * s), 4 - F(9 * q * q, 8 * s))
    b = (
        -2 - F(9 * p * q, 8 * s),
        -F(10 * p * p + p * q + q * q, 4 * s),
        -F(p * p + p * q + 10 * q * q, 4 * s),
    )
    c = (F(3 * (p + q) ** 2, 2 * s), F(3 * p * p, 8 * s), F(3 * q * q, 8 * s))
    unit = (-3 * (p + q), 2 * p + q, p + 2 * q)
    xi = tuple(u * sqrt(3 / s) / 8 for u in unit)
    return PinchCoefficients(p, q, a, b, c, D_FIXED, xi, unit)


def lambda_branch(coeffs, j, x):
    """Lower hyperbola branch ``lambda_j(x)``; concave with peak ``min(c_j, d_j)`` at ``xi_j``."""
    if j not in (0, 1, 2):
        raise ValueError(f"branch index must be 0, 1 or 2, got {j}")
    c, d = float(coeffs.c[j]), float(coeffs.d[j])
    return (c + d) / 2 - np.sqrt(((c - d) / 2) ** 2 + (coeffs.xi[j] - np.asarray(x, float)) ** 2)


def _lower_envelope(coeffs, x):
    return np.minimum.reduce([lambda_branch(coeffs, j, x) for j in range(3)])


def _lambda_hat_ternary(coeffs, tol=1e-12):
    lo, hi = min(coeffs.xi), max(coeffs.xi)
    while hi - lo > tol:
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if _lower_envelope(coeffs, m1) < _lower_envelope(coeffs, m2):
            lo = m1
        else:
            hi = m2
    x = 0.5 * (lo + hi)
    return float(_lower_envelope(coeffs, x)), x


def intersections(coeffs, i, j, grid=4001):
    """Roots of ``lambda_i - lambda_j`` in ``[min xi, max xi]`` via bracketing and brentq."""
    lo, hi = min(coeffs.xi), max(coeffs.xi)
    xs = np.linspace(lo, hi, grid)
    g = lambda_branch(coeffs, i, xs) - lambda_branch(coeffs, j, xs)
    roots = [float(x) for x, v in zip(xs, g) if v == 0.0]
    for k in np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0)[0]:
        f = lambda x: float(lambda_branch(coeffs, i, x) - lambda_branch(coeffs, j, x))
        roots.append(brentq(f, xs[k], xs[k + 1], xtol=1e-15))
    return roots


def _lambda_hat_candidates(coeffs):
    cands = list(coeffs.xi)
    for i, j in ((0, 1), (1, 2), (2, 0)):
        cands += intersections(coeffs, i, j)
    vals = _lower_envelope(coeffs, np.array(cands))
    k = int(np.argmax(vals))
    return float(vals[k]), cands[k]


def lambda_hat(coeffs, method="ternary"):
    """``max_x min_j lambda_j(x)`` by ternary search or candidate enumeration.

    The envelope of concave branches is concave, so ternary search on
    ``[min xi, max xi]`` converges; its maximum also sits at some ``xi_j``
    or at a crossing of two branches, which the candidate method lists.
    """
    if method == "ternary":
        return _lambda_hat_ternary(coeffs)[0]
    if method == "candidates":
        return _lambda_hat_candidates(coeffs)[0]
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class SimplexQuadratic:
    A: tuple  # 3x3 rows of Fractions
    D: tuple  # adj(A) @ (1, 1, 1)

    @property
    def det(self):
        (a, b, c), (d, e, f), (g, h, i) = self.A
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def matrix(self):
        return np.array([[float(v) for v in row] for row in self.A])


def _adjugate(A):
    (a, b, c), (d, e, f), (g, h, i) = A
    return (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )


def simplex_quadratic(coeffs):
    a, b = coeffs.a, coeffs.b
    A = ((a[0], b[2], b[1]), (b[2], a[1], b[0]), (b[1], b[0], a[2]))
    D = tuple(sum(row) for row in _adjugate(A))
    return SimplexQuadratic(A, D)


@dataclass(frozen=True)
class LambdaBar:
    value: Fraction
    closed_form: Optional[Fraction]
    gates_hold: bool
    minimizer: tuple


def _qform(A, x):
    return sum(A[i][j] * x[i] * x[j] for i in range(3) for j in range(3))


def lambda_bar(sq, coeffs=None):
    """Exact minimum of ``x^T A x`` over the simplex ``x >= 0, sum x = 1``.

    Candidates are the three vertices, the clamped minimiser on each edge
    and the interior stationary point ``x ~ A^{-1} 1`` when it is feasible.
    All arithmetic is rational.  ``closed_form`` is ``det A / sum D``; the
    gates are ``sum_j (a_j - b_j) >= 0`` and every ``D_j > 0``.
    """
    A = sq.A
    one, zero = Fraction(1), Fraction(0)
    cands = [tuple(one if k == i else zero for k in range(3)) for i in range(3)]
    for i, j in ((0, 1), (1, 2), (0, 2)):
        # x = t e_i + (1 - t) e_j
        den = A[i][i] + A[j][j] - 2 * A[i][j]
        if den > 0:
            t = min(max((A[j][j] - A[i][j]) / den, zero), one)
            x = [zero] * 3
            x[i], x[j] = t, 1 - t
            cands.append(tuple(x))
    total = sum(sq.D)
    if total != 0 and all(v / total >= 0 for v in sq.D):
        cands.append(tuple(v / total for v in sq.D))
    vals = [_qform(A, x) for x in cands]
    k = min(range(len(vals)), key=vals.__getitem__)
    closed = sq.det / total if total != 0 else None
    gates = all(v > 0 for v in sq.D)
    if coeffs is not None:
        gates = gates and sum(coeffs.a) - sum(coeffs.b) >= 0
    return LambdaBar(vals[k], closed, gates, cands[k])


def nu_below(level, c, off_sq, e, strict=False):
    """Whether ``level`` bounds the top eigenvalue of ``[[c, o], [o, e]]``, ``o^2 = off_sq``.

    ``level I - M`` is (positive) semidefinite exactly when its diagonal and
    determinant are, so exact inputs give an exact answer.
    """
    if strict:
        return level > c and level > e and (level - c) * (level - e) > off_sq
    return level >= c and level >= e and (level - c) * (level - e) >= off_sq


def _nu(c, off_sq, e):
    c, e, off_sq = float(c), float(e), float(off_sq)
    return 0.5 * (c + e) + sqrt(0.25 * (c - e) ** 2 + off_sq)


def nu_blocks(coeffs):
    """``(c_j, 2 (xi_j - xi_0)^2, 2 d_j - b_j)`` for ``j = 1, 2``, all rational."""
    c, d, b = coeffs.c, coeffs.d, coeffs.b
    return [(c[j], 2 * coeffs.xi_sq(j, 0), 2 * d[j] - b[j]) for j in (1, 2)]


@dataclass(frozen=True)
class KMax:
    value: Optional[Fraction]
    capital_lambda0: Fraction
    nu1: float
    nu2: float
    lambda0_gate: bool
    kmax_gate: bool


def k_max(coeffs):
    """``Lambda_0`` and the two sufficient conditions for ``K_max = Lambda_0``.

    The first gate is ``a_1 > 2 d_0 - b_0``; the second asks
    ``Lambda_0 >= max(b_j, c_0, nu_1, nu_2)`` with ``nu_j`` the largest
    eigenvalue of ``[[c_j, sqrt2 (xi_j - xi_0)], [., 2 d_j - b_j]]``.
    Both are decided in exact arithmetic.  ``value`` is ``None`` unless both
    hold.
    """
    a, b, c, d = coeffs.a, coeffs.b, coeffs.c, coeffs.d
    L0 = max(a[0], a[1], a[2], c[0])
    gate1 = a[1] > 2 * d[0] - b[0]
    blocks = nu_blocks(coeffs)
    nus = [_nu(*blk) for blk in blocks]
    above_nu = all(nu_below(L0, *blk) for blk in blocks)
    gate2 = gate1 and L0 >= max(*b, c[0]) and above_nu
    return KMax(L0 if gate2 else None, L0, nus[0], nus[1], gate1, gate2)


@dataclass(frozen=True)
class PinchResult:
    index: tuple
    lambda_hat: float
    lambda_bar: float
    capital_lambda0: float
    nu1: float
    nu2: float
    k_min: float
    k_max: float
    flags: dict
    exact: dict


def pinch(idx, oracle_budget: Optional[int] = 10_000, seed=0):
    """Sectional curvature range of W(p, q) from the closed-form machinery.

    The positive representative of ``idx`` is used.  When the ``K_max``
    gates fail, ``k_max`` comes from the numerical oracle (flagged), or
    :class:`CurvatureUnavailableError` is raised if ``oracle_budget`` is
    ``None``.
    """
    idx = as_index(idx)
    idx.require_positively_curvable()
    rep = idx.positive_representative()
    co = coefficients(rep)
    lh = lambda_hat(co)
    lb = lambda_bar(simplex_quadratic(co), co)
    km = k_max(co)
    exact = {"lambda_bar": lb.value, "capital_lambda0": km.capital_lambda0}
    if km.value is not None:
        kmax, method = float(km.value), "closed-form"
        exact["k_max"] = km.value
    elif oracle_budget is None:
        raise CurvatureUnavailableError(f"K_max gates fail for W({rep.p},{rep.q}) and the oracle is disabled")
    else:
        from .curvature import extremize_sectional

        kmax, method = extremize_sectional(rep, budget=oracle_budget, seed=seed).k_max, "oracle"
    flags = {
        "simplex_closed_form": lb.gates_hold,
        "lambda0_gate": km.lambda0_gate,
        "kmax_gate": km.kmax_gate,
        "k_min_method": "closed-form",
        "k_max_method": method,
    }
    return PinchResult(
        index=(rep.p, rep.q),
        lambda_hat=lh,
        lambda_bar=float(lb.value),
        capital_lambda0=float(km.capital_lambda0),
        nu1=km.nu1,
        nu2=km.nu2,
        k_min=min(lh, float(lb.value)),
        k_max=kmax,
        flags=flags,
        exact=exact,
    )


# Closed forms along the family W(n, n+1).  The general routines above are
# the source of truth; these are kept as regression anchors.


def _check_n(n):
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return int(n)


def c_family(n):
    """Closed radical form of ``min K`` on W(n, n+1)."""
    n = _check_n(n)
    D = 1 + 3 * n + 3 * n * n
    S = sqrt(3 + 9 * n + 9 * n * n)
    poly5 = 32 + 552 * n + 3132 * n**2 + 8037 * n**3 + 9648 * n**4 + 4401 * n**5
    poly7 = (-56 - 555 * n - 1935 * n**2 - 1620 * n**3 + 7173 * n**4
             + 22788 * n**5 + 26649 * n**6 + 11907 * n**7)
    den = 64 + 672 * n + 2916 * n**2 + 6624 * n**3 + 8181 * n**4 + 4995 * n**5 + 999 * n**6
    inner = (poly5 * S - sqrt(3 * n) * (16 + 60 * n + 57 * n**2) * sqrt(poly7)) / den
    head = (17 + 63 * n + 63 * n * n) / (16 + 48 * n + 48 * n * n)
    return head - sqrt((7 + 33 * n + 33 * n * n) ** 2 / D**2 + 4 * (9 * (1 + 2 * n) / S + inner) ** 2) / 16


def C_family(n):
    """``K_max`` on W(n, n+1): ``4 - 9 n^2 / (8 (1 + 3n + 3n^2))``."""
    n = _check_n(n)
    return 4 - Fraction(9 * n * n, 8 * (1 + 3 * n + 3 * n * n))


@dataclass(frozen=True)
class FamilyFormulas:
    n: int
    c_n: float
    C_n: Fraction


def family_formulas(n):
    n = _check_n(n)
    return FamilyFormulas(n, c_family(n), C_family(n))


def lambda_bar_printed(p, q):
    """Published rational form of ``lambda_bar``; not symmetric in ``p, q``."""
    num = (p * p + p * q + q * q) * (59 * p * p - 22 * p * q + 59 * q * q)
    den = 772 * p**4 + 1127 * p**3 * q + 1776 * p**2 * q**2 + 977 * p * q**3 + 676 * q**4
    return Fraction(num, den)


def lambda_bar_family_printed(n):
    n = _check_n(n)
    num = (1 + 3 * n + 3 * n * n) * (59 + 96 * n + 96 * n * n)
    den = 676 + 3681 * n + 8763 * n**2 + 10314 * n**3 + 5328 * n**4
    return Fraction(num, den)


def two_d0_minus_b0_family(n):
    n = _check_n(n)
    return Fraction(26 + 87 * n + 87 * n * n, 8 * (1 + 3 * n + 3 * n * n))


def nu_family(n):
    """Published radical forms of ``(nu_1, nu_2)`` on W(n, n+1)."""
    n = _check_n(n)
    den = 16 * (1 + 3 * n + 3 * n * n)
    r1 = sqrt(400 + 2976 * n + 8640 * n**2 + 11664 * n**3 + 6561 * n**4)
    r2 = sqrt(961 + 5556 * n + 13014 * n**2 + 14580 * n**3 + 6561 * n**4)
    return (4 + 12 * n + 33 * n * n + r1) / den, (25 + 54 * n + 33 * n * n + r2) / den


def a1_minus_nu2_family(n):
    n = _check_n(n)
    r = sqrt(961 + 5556 * n + 13014 * n**2 + 14580 * n**3 + 6561 * n**4)
    return (39 + 138 * n + 141 * n * n - r) / (16 * (1 + 3 * n + 3 * n * n))


def lambda_bar_from_D(p, q):
    """``det A / sum D`` with ``D`` from adjugate row sums, as a rational in ``p, q``.

    Equals ``(59p^2 - 22pq + 59q^2) / (4 (181p^2 + 82pq + 181q^2))``.
    """
    return Fraction(59 * p * p - 22 * p * q + 59 * q * q, 4 * (181 * p * p + 82 * p * q + 181 * q * q))
