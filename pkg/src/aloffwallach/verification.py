"""Oracle-versus-closed-form checks, one per acceptance criterion.

Each check takes a :class:`VerifyConfig` and returns a :class:`CheckResult`.
``VerifyConfig.coefficients_fn`` lets tests inject a tampered coefficient
table; only the checks that consume coefficients see it.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, pi, sqrt
from typing import Callable

import numpy as np

from . import pinching
from .curvature import base_curvature_operator, extremize_sectional, group_curvature, group_sectional
from .euler import (
    SU3_RANGES,
    QuadratureSpec,
    integrate_volume,
    killing_density_closed_form,
    volume_density,
)
from .injectivity import CurvatureInterval, bounds_wpq
from .structure import MetricSpec, WpqIndex, build_split, check_condition_II
from .su3 import bracket, from_coordinates, killing_norm
from .volumes import VOL_SU3_KILLING, vol_wpq_bounds


@dataclass
class VerifyConfig:
    budget: int = 10_000
    seed: int = 0
    tol: float = 1e-3
    coefficients_fn: Callable = pinching.coefficients
    _oracle: dict = field(default_factory=dict, repr=False)

    def oracle(self, p, q):
        """Cached oracle extremisation, shared between checks."""
        key = (p, q)
        if key not in self._oracle:
            t0 = time.perf_counter()
            res = extremize_sectional(key, budget=self.budget, seed=self.seed)
            self._oracle[key] = (res, time.perf_counter() - t0)
        return self._oracle[key]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _random_positive_pairs(rng, count, bound=50, positive=False):
    out = []
    while len(out) < count:
        lo = 1 if positive else -bound
        p, q = (int(v) for v in rng.integers(lo, bound + 1, size=2))
        if p != 0 and q != 0 and p + q != 0:
            out.append((p, q))
    return out


def _pinch_parts(cfg, p, q):
    co = cfg.coefficients_fn(WpqIndex(p, q))
    return co, pinching.lambda_hat(co), pinching.lambda_bar(pinching.simplex_quadratic(co), co), pinching.k_max(co)


def check_volume_constant(cfg):
    t0 = time.perf_counter()
    est = integrate_volume(MetricSpec.killing(), build_split((1, 1)), QuadratureSpec(nodes=32))
    dt = time.perf_counter() - t0
    rel = abs(est.value - VOL_SU3_KILLING) / VOL_SU3_KILLING
    ok = rel < 1e-6 and dt < 30
    return CheckResult("volume_constant", ok, f"vol={est.value:.12g} rel_err={rel:.2e} time={dt:.2f}s")


def check_density_closed_form(cfg):
    rng = np.random.default_rng(cfg.seed)
    lo = np.array([r[0] for r in SU3_RANGES])
    hi = np.array([r[1] for r in SU3_RANGES])
    pts = rng.uniform(lo, hi, size=(100, 8))
    num = volume_density(pts, MetricSpec.killing(), build_split((1, 1)))
    ref = killing_density_closed_form(pts)
    rel = float(np.max(np.abs(num - ref) / np.abs(ref)))
    return CheckResult("density_closed_form", rel < 1e-9, f"max_rel_err={rel:.2e} over 100 points")


def check_volume_sandwich(cfg):
    rng = np.random.default_rng(cfg.seed)
    worst, ok = 0.0, True
    for p, q in _random_positive_pairs(rng, 100):
        vb = vol_wpq_bounds((p, q))
        exact = sqrt(3) * pi**4 * gcd(abs(p), abs(q)) / (4 * sqrt(2) * sqrt(p * p + p * q + q * q))
        ok &= vb.lower < exact < vb.upper and abs(vb.exact - exact) <= 1e-12 * exact
        r1 = exact / vb.lower / (4 * sqrt(2)) - 1
        r2 = vb.upper / exact / (2 * sqrt(2)) - 1
        worst = max(worst, abs(r1), abs(r2))
    ok &= worst < 1e-12
    return CheckResult("volume_sandwich", bool(ok), f"100 pairs, worst ratio deviation={worst:.1e}")


def check_w11_pinching(cfg):
    res, dt = cfg.oracle(1, 1)
    e1, e2 = abs(res.k_min - 2 / 37), abs(res.k_max - 29 / 8)
    ok = e1 < cfg.tol and e2 < cfg.tol and dt < 120
    return CheckResult(
        "w11_pinching", ok, f"k_min={res.k_min:.12g} k_max={res.k_max:.12g} errs=({e1:.1e},{e2:.1e}) time={dt:.1f}s"
    )


C1_DERIVED = 0.047546894253  # closed radical form evaluated at n = 1, frozen


def check_family_sharpness(cfg):
    worst, ok = 0.0, True
    for n in range(1, 6):
        res, _ = cfg.oracle(n, n + 1)
        co, lh, lb, km = _pinch_parts(cfg, n, n + 1)
        closed_min = min(lh, float(lb.value))
        closed_max = float(km.value) if km.value is not None else float("nan")
        err = max(
            abs(res.k_min - pinching.c_family(n)),
            abs(res.k_max - float(pinching.C_family(n))),
            abs(res.k_min - closed_min),
            abs(res.k_max - closed_max),
        )
        worst = max(worst, err)
        ok &= err < cfg.tol
    c1 = pinching.c_family(1)
    ok &= abs(c1 - C1_DERIVED) < 1e-11 and Fraction(1, 25) < c1 < Fraction(2, 37)
    ok &= pinching.C_family(1) == Fraction(215, 56)
    co1 = cfg.coefficients_fn(WpqIndex(1, 2))
    ok &= pinching.k_max(co1).value == Fraction(215, 56)
    return CheckResult("family_sharpness", bool(ok), f"n=1..5 worst={worst:.1e} c(1)={c1:.12g} C(1)=215/56")


def check_lambda_bar(cfg):
    rng = np.random.default_rng(cfg.seed)
    worst, sym = 0.0, True
    for p, q in _random_positive_pairs(rng, 100, positive=True):
        _, _, lb, _ = _pinch_parts(cfg, p, q)
        _, _, lb_sw, _ = _pinch_parts(cfg, q, p)
        worst = max(worst, abs(float(lb.value - lb.closed_form)))
        sym &= abs(float(lb.value - lb_sw.value)) < 1e-12
    lb12 = _pinch_parts(cfg, 1, 2)[2].value
    lb11 = _pinch_parts(cfg, 1, 1)[2].value
    parts = {
        "qp_vs_closed": worst < 1e-12,
        "lambda_bar(1,2)=1757/28762": lb12 == Fraction(1757, 28762),
        "lambda_bar(1,1)=2/37": lb11 == Fraction(2, 37),
        "symmetric": bool(sym),
    }
    failed = [k for k, v in parts.items() if not v]
    detail = f"qp-closed worst={worst:.1e} lambda_bar(1,2)={lb12} ({float(lb12):.12g})"
    if failed:
        detail += " failed: " + ", ".join(failed)
    return CheckResult("lambda_bar_dual", not failed, detail)


def check_lambda_hat(cfg):
    rng = np.random.default_rng(cfg.seed)
    worst, prev, mono, below = 0.0, -np.inf, True, True
    for n in range(1, 101):
        co = cfg.coefficients_fn(WpqIndex(n, n + 1))
        t, c = pinching.lambda_hat(co, "ternary"), pinching.lambda_hat(co, "candidates")
        worst = max(worst, abs(t - c))
        mono &= c > prev
        below &= 2 / 37 - c > 0
        prev = c
    for p, q in _random_positive_pairs(rng, 100, positive=True):
        co = cfg.coefficients_fn(WpqIndex(p, q))
        worst = max(worst, abs(pinching.lambda_hat(co, "ternary") - pinching.lambda_hat(co, "candidates")))
    far = pinching.lambda_hat(cfg.coefficients_fn(WpqIndex(10**5, 10**5 + 1)), "candidates")
    limit_ok = 0 < 2 / 37 - far < 1e-5
    ok = worst < 1e-10 and mono and below and limit_ok
    return CheckResult(
        "lambda_hat_dual",
        bool(ok),
        f"ternary-candidates worst={worst:.1e} monotone={mono} below_2/37={below} gap(n=1e5)={2 / 37 - far:.1e}",
    )


def check_curvature_operator(cfg):
    ev11 = base_curvature_operator((1, 1)).eigenvalues
    ok = ev11[0] < 0
    worst = np.inf
    for n in range(0, 6):
        p, q = (1, 1) if n == 0 else (n, n + 1)
        ev = base_curvature_operator((p, q)).eigenvalues
        res, _ = cfg.oracle(p, q)
        ok &= ev[0] <= res.k_min and res.k_max <= ev[-1]
        worst = min(worst, res.k_min - ev[0], ev[-1] - res.k_max)
    return CheckResult(
        "curvature_operator", bool(ok), f"lambda_min(W(1,1))={ev11[0]:.12g} sandwich slack>={worst:.3g}"
    )


def check_kmax_gates(cfg):
    ok, prev = True, None
    for n in range(1, 101):
        co = cfg.coefficients_fn(WpqIndex(n, n + 1))
        a, b, d = co.a, co.b, co.d
        ok &= a[1] > 2 * d[0] - b[0]
        ok &= 2 * d[0] - b[0] == pinching.two_d0_minus_b0_family(n)
        ok &= pinching.nu_below(a[1], *pinching.nu_blocks(co)[1], strict=True)
        km = pinching.k_max(co).value
        ok &= km is not None and km == pinching.C_family(n)
        if km is not None:
            ok &= prev is None or km < prev
            ok &= km > pinching.TWENTY_NINE_8
            prev = km
    gap = float(pinching.C_family(10**6) - pinching.TWENTY_NINE_8)
    ok &= 0 < gap < 1e-6
    return CheckResult("kmax_gates", bool(ok), f"n=1..100 exact gates, C(1e6)-29/8={gap:.1e}")


def check_injectivity(cfg):
    b11 = bounds_wpq((1, 1), "huang-constants")
    target = 3 * pi / (4 * 37**3)
    rel = abs(b11.lower - target) / target
    up = pi * 1.5 ** (1 / 7)
    ok = rel < 1e-4 and abs(b11.upper - up) < 1e-12 * up
    for n in range(1, 101):
        co = cfg.coefficients_fn(WpqIndex(n, n + 1))
        kmin = min(pinching.lambda_hat(co), float(pinching.lambda_bar(pinching.simplex_quadratic(co)).value))
        km = pinching.k_max(co).capital_lambda0
        b = bounds_wpq((n, n + 1), interval=CurvatureInterval(kmin, float(km)))
        ok &= b.lower <= b.upper
    return CheckResult(
        "injectivity", bool(ok), f"i_lower(1,1)={b11.lower:.12g} rel_err={rel:.1e} i_upper(1,1)={b11.upper:.12g}"
    )


def check_bi_invariant(cfg):
    rng = np.random.default_rng(cfg.seed)
    split = build_split((1, 1))
    table = group_curvature(MetricSpec.killing(), split)
    worst = 0.0
    for _ in range(100):
        x, y = rng.normal(size=(2, 8))
        x /= np.linalg.norm(x)
        y -= (y @ x) * x
        y /= np.linalg.norm(y)
        X, Y = from_coordinates(x), from_coordinates(y)
        K = group_sectional(table, split, X, Y)
        ref = 0.25 * killing_norm(bracket(X, Y)) ** 2
        worst = max(worst, abs(K - ref) / max(abs(ref), 1e-300))
    return CheckResult("bi_invariant", worst < 1e-9, f"max_rel_err={worst:.1e} over 100 pairs")


def check_condition_ii(cfg):
    ok, worst, parts = True, 0.0, []
    for pq in ((1, 1), (1, 2), (2, 3), (1, 3), (3, 5)):
        split = build_split(pq)
        samples = 10 * cfg.budget if pq in ((1, 1), (1, 2)) else 0
        rep = check_condition_II(split, sample_budget=samples, seed=cfg.seed)
        worst = max(worst, rep.residual_item1, rep.residual_item2, rep.residual_item3)
        ok &= rep.holds(1e-12)
        if samples:
            parts.append(f"{pq}: {rep.item4_violations}/{rep.item4_samples} margin={rep.item4_margin:.3g}")
    return CheckResult("condition_II", bool(ok), f"items1-3 worst={worst:.1e}; item4 " + "; ".join(parts))


CHECKS = {
    "volume_constant": check_volume_constant,
    "density_closed_form": check_density_closed_form,
    "volume_sandwich": check_volume_sandwich,
    "w11_pinching": check_w11_pinching,
    "family_sharpness": check_family_sharpness,
    "lambda_bar_dual": check_lambda_bar,
    "lambda_hat_dual": check_lambda_hat,
    "curvature_operator": check_curvature_operator,
    "kmax_gates": check_kmax_gates,
    "injectivity": check_injectivity,
    "bi_invariant": check_bi_invariant,
    "condition_II": check_condition_ii,
}


def run_checks(cfg=None, names=None):
    cfg = cfg or VerifyConfig()
    out = []
    for name in names or CHECKS:
        try:
            out.append(CHECKS[name](cfg))
        except Exception as exc:  # a crashing check is a failing check
            out.append(CheckResult(name, False, f"error: {type(exc).__name__}: {exc}"))
    return out
