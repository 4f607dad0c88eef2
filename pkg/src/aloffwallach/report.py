"""Bounds reports for single spaces and family tables along W(n, n+1)."""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import pinching
from .curvature import extremize_sectional
from .injectivity import CurvatureInterval, bounds_wpq
from .structure import DegenerateIndexError, as_index
from .volumes import vol_wpq_bounds

REPORT_VERSION = "aloffwallach-report/1"
SIG_DIGITS = 12
ORACLE_AGREEMENT = 1e-6


def fmt(x):
    """Round to 12 significant digits; idempotent, so reports round-trip."""
    return float(format(float(x), f".{SIG_DIGITS}g"))


def _normalize(obj):
    if isinstance(obj, dict):
        return {k: _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    return fmt(obj)


def dumps(doc):
    return json.dumps(_normalize(doc), indent=2, ensure_ascii=False) + "\n"


def loads(text):
    return json.loads(text)


@dataclass(frozen=True)
class BoundsReport:
    document: dict

    @property
    def ok(self):
        return self.document["curvature"].get("status") == "ok"

    def to_text(self):
        return dumps(self.document)


def build_report(p, q, oracle_budget: Optional[int] = 10_000, seed=0, curvature=True):
    """Volume, curvature and injectivity bounds for W(p, q).

    Curvature is refused, not raised, for degenerate indices so that the
    volume part is still reported.  With ``oracle_budget`` the closed forms
    are cross-checked by the numerical extremiser.
    """
    idx = as_index((p, q))
    vb = vol_wpq_bounds(idx)
    doc = {
        "version": REPORT_VERSION,
        "index": {"p": idx.p, "q": idx.q, "classification": idx.classification},
        "volume": {"lower": vb.lower, "exact": vb.exact, "upper": vb.upper},
    }
    prov = {"volume": "closed-form", "seed": seed, "oracle_budget": oracle_budget}
    if not curvature:
        doc["curvature"] = {"status": "skipped"}
        doc["provenance"] = prov
        return BoundsReport(doc)
    try:
        res = pinching.pinch(idx, oracle_budget=oracle_budget, seed=seed)
    except DegenerateIndexError as exc:
        doc["curvature"] = {"status": "refused", "reason": str(exc)}
        doc["provenance"] = prov
        return BoundsReport(doc)

    cur = {
        "status": "ok",
        "representative": list(res.index),
        "k_min": res.k_min,
        "k_max": res.k_max,
        "k_min_exact": res.exact["lambda_bar"] if res.lambda_bar <= res.lambda_hat + 1e-12 else None,
        "k_max_exact": res.exact.get("k_max"),
        "lambda_hat": res.lambda_hat,
        "lambda_bar": res.exact["lambda_bar"],
        "capital_lambda0": res.exact["capital_lambda0"],
        "nu1": res.nu1,
        "nu2": res.nu2,
        "flags": {k: v for k, v in res.flags.items() if isinstance(v, bool)},
    }
    prov["k_min"] = res.flags["k_min_method"]
    prov["k_max"] = res.flags["k_max_method"]
    if oracle_budget:
        ext = extremize_sectional(res.index, budget=oracle_budget, seed=seed)
        cur["oracle"] = {"k_min": ext.k_min, "k_max": ext.k_max, "converged": ext.converged}
        for key, val in (("k_min", ext.k_min), ("k_max", ext.k_max)):
            if prov[key] == "closed-form" and abs(cur[key] - val) < ORACLE_AGREEMENT:
                prov[key] = "both"
    prov["tolerances"] = {"oracle_agreement": ORACLE_AGREEMENT}
    inj = bounds_wpq(idx, interval=CurvatureInterval(res.k_min, res.k_max))
    doc["curvature"] = cur
    doc["injectivity"] = {"lower": inj.lower, "upper": inj.upper, "binding_branch": inj.binding_branch}
    doc["provenance"] = prov
    return BoundsReport(doc)


FAMILY_COLUMNS = (
    "n",
    "lambda_hat",
    "lambda_bar",
    "lambda_bar_exact",
    "lambda_bar_printed",
    "c_n",
    "C_n",
    "C_n_exact",
    "inj_lower",
    "inj_upper",
    "two_over_37",
    "twenty_nine_over_8",
)


def family_rows(n_max):
    """Rows along W(n, n+1) for plotting ``lambda_hat``, ``lambda_bar`` and ``K_max``.

    ``lambda_bar`` is the simplex minimum; ``lambda_bar_printed`` evaluates
    the published rational form for comparison.
    """
    if int(n_max) != n_max or n_max < 1:
        raise ValueError("n_max must be a positive integer")
    rows = []
    for n in range(1, int(n_max) + 1):
        res = pinching.pinch((n, n + 1), oracle_budget=None)
        fam = pinching.family_formulas(n)
        inj = bounds_wpq((n, n + 1), interval=CurvatureInterval(res.k_min, res.k_max))
        rows.append(
            {
                "n": n,
                "lambda_hat": res.lambda_hat,
                "lambda_bar": res.lambda_bar,
                "lambda_bar_exact": res.exact["lambda_bar"],
                "lambda_bar_printed": float(pinching.lambda_bar_family_printed(n)),
                "c_n": fam.c_n,
                "C_n": float(fam.C_n),
                "C_n_exact": fam.C_n,
                "inj_lower": inj.lower,
                "inj_upper": inj.upper,
                "two_over_37": float(pinching.TWO_37),
                "twenty_nine_over_8": float(pinching.TWENTY_NINE_8),
            }
        )
    return rows


def cell(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    return format(float(v), f".{SIG_DIGITS}g")
