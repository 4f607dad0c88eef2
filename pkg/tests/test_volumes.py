from math import pi, sqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aloffwallach.volumes import orbit_length, orbit_length_numeric, vol_wpq_bounds

ints = st.integers(-30, 30)


@pytest.mark.parametrize("pq", [(1, 1), (1, 2), (2, 4), (3, -5)])
def test_orbit_length_quadrature(pq):
    assert orbit_length_numeric(pq) == pytest.approx(orbit_length(pq), rel=1e-10)


def test_w11_volume_bounds():
    vb = vol_wpq_bounds((1, 1))
    assert vb.lower == pytest.approx(pi**4 / 32, rel=1e-14)
    assert vb.exact == pytest.approx(pi**4 / (4 * sqrt(2)), rel=1e-14)


@given(ints, ints)
def test_scaling_invariance(p, q):
    if (p, q) == (0, 0):
        return
    a, b = vol_wpq_bounds((p, q)), vol_wpq_bounds((3 * p, 3 * q))
    assert a.exact == pytest.approx(b.exact, rel=1e-12)
