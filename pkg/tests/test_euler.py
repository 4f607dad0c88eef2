import numpy as np
import pytest

from aloffwallach.euler import (
    SU3_RANGES,
    QuadratureSpec,
    integrate_volume,
    killing_density_closed_form,
    random_su3,
    su3_angles_from_point,
    su3_point,
    volume_density,
)
from aloffwallach.structure import MetricSpec, build_split
from aloffwallach.su3 import is_group_element
from aloffwallach.volumes import VOL_SU3_KILLING, vol_su3

LO = np.array([r[0] for r in SU3_RANGES])
HI = np.array([r[1] for r in SU3_RANGES])


def test_points_are_unitary():
    pts = np.random.default_rng(1).uniform(LO, HI, size=(20, 8))
    assert all(is_group_element(su3_point(a)) for a in pts)


def test_metric_w_density_is_constant_multiple():
    split = build_split((1, 1))
    pts = np.random.default_rng(2).uniform(LO, HI, size=(50, 8))
    ratio = volume_density(pts, MetricSpec.wallach_w(), split) / killing_density_closed_form(pts)
    assert np.allclose(ratio, 1 / (2 * np.sqrt(2)), rtol=1e-9)


def test_degenerate_point_raises():
    split = build_split((1, 1))
    with pytest.raises(ValueError):
        volume_density(np.zeros(8), MetricSpec.killing(), split)
    assert np.isnan(volume_density(np.zeros(8), MetricSpec.killing(), split, strict=False))


def test_monte_carlo_agrees_with_gauss():
    est = integrate_volume(MetricSpec.killing(), build_split((1, 1)), QuadratureSpec(scheme="monte-carlo", samples=100_000))
    assert abs(est.value - VOL_SU3_KILLING) < 5 * est.error


def test_w_volume():
    est = integrate_volume(MetricSpec.wallach_w(), build_split((1, 2)))
    assert est.value == pytest.approx(vol_su3(MetricSpec.wallach_w()), rel=1e-8)


def test_chart_covers_random_elements():
    g = random_su3(np.random.default_rng(3))
    a, resid = su3_angles_from_point(g)
    assert resid < 1e-10
    assert np.max(np.abs(su3_point(a) - g)) < 1e-8
