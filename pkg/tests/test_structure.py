import numpy as np
import pytest

from aloffwallach.structure import (
    DegenerateIndexError,
    MetricSpec,
    WpqIndex,
    ad_invariance_residual,
    build_split,
    check_condition_II,
    metric_eval,
)
from aloffwallach.su3 import killing


def test_index_validation():
    with pytest.raises(ValueError):
        WpqIndex(0, 0)
    with pytest.raises(DegenerateIndexError):
        WpqIndex(1, -1).require_positively_curvable()
    assert WpqIndex(1, -1).classification == "degenerate"


@pytest.mark.parametrize("pq,rep", [((1, 2), (1, 2)), ((2, 1), (1, 2)), ((1, -2), (1, 1)), ((3, -1), (1, 2)), ((-2, -3), (2, 3))])
def test_positive_representative(pq, rep):
    r = WpqIndex(*pq).positive_representative()
    assert (r.p, r.q) == rep


@pytest.mark.parametrize("pq", [(1, 1), (1, 2), (2, 5)])
def test_split_orthonormal(pq):
    split = build_split(pq)
    F = split.frame
    G = np.array([[killing(a, b) for b in F] for a in F])
    assert np.allclose(G, np.eye(8), atol=1e-12)


def test_ktilde_gives_half_on_v1():
    split = build_split((1, 2))
    v = split.v1_basis[0]
    assert metric_eval(MetricSpec.base_ktilde(), split, v, v) == pytest.approx(0.5)


def test_ad_invariance():
    assert ad_invariance_residual(build_split((2, 3))) < 1e-12


def test_condition_ii_items_1_to_3():
    rep = check_condition_II(build_split((1, 3)), sample_budget=2000)
    assert max(rep.residual_item1, rep.residual_item2, rep.residual_item3) < 1e-12
    assert rep.item4_violations == 0


def test_item4_finds_counterexample_for_mixed_signs():
    # the literal split for pq < 0 is not the positive representative's
    rep = check_condition_II(build_split((1, -2)), sample_budget=2000)
    assert rep.item4_violations > 0
