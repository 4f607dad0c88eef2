from math import pi

import numpy as np
import pytest

from aloffwallach.injectivity import (
    CurvatureInterval,
    berger_upper,
    bounds_wpq,
    cheeger_lower,
    curvature_interval_for,
    s_delta,
    vol_sphere,
)
from aloffwallach.pinching import c_family


def test_s_delta():
    assert s_delta(1.0, 0.0) == 0.0
    assert s_delta(1.0, pi / 2) == pytest.approx(1.0)
    h = 1e-6
    for d in (-2.0, 0.0, 0.5):
        assert (s_delta(d, h) - s_delta(d, 0)) / h == pytest.approx(1.0, abs=1e-6)


def test_vol_sphere():
    assert vol_sphere(1) == pytest.approx(2 * pi)
    assert vol_sphere(2) == pytest.approx(4 * pi)
    assert vol_sphere(7) == pytest.approx(pi**4 / 3, rel=1e-15)


def test_w11_branches():
    iv = CurvatureInterval(2 / 37, 29 / 8)
    lower = cheeger_lower(pi**4 / 32, iv)
    assert lower == pytest.approx(3 * pi / (4 * 37**3), rel=1e-12)
    assert lower < pi / np.sqrt(29 / 8)


def test_full_form_not_smaller():
    iv = CurvatureInterval(0.05, 3.8)
    for d in (0.5, 2.0, 10.0):
        assert cheeger_lower(3.0, iv, diameter=d) >= cheeger_lower(3.0, iv) * (1 - 1e-12)


def test_monotone_in_delta():
    a = cheeger_lower(3.0, CurvatureInterval(0.01, 3.0))
    b = cheeger_lower(3.0, CurvatureInterval(0.02, 3.0))
    assert b >= a


def test_berger_upper_general_formula():
    for p, q in ((1, 2), (2, 5), (3, 3)):
        g = np.gcd(p, q)
        ref = pi * (3 * np.sqrt(3) * g / (2 * np.sqrt(p * p + q * q + p * q))) ** (1 / 7)
        assert bounds_wpq((p, q), interval=CurvatureInterval(0.04, 3.9)).upper == pytest.approx(ref, rel=1e-13)


def test_gcd_cancellation():
    iv = CurvatureInterval(0.04, 3.9)
    assert bounds_wpq((2, 4), interval=iv).upper == pytest.approx(bounds_wpq((1, 2), interval=iv).upper)


def test_family_lower_closed_form():
    for n in (1, 3, 8):
        b = bounds_wpq((n, n + 1))
        ref = 3 * np.sqrt(3) * pi * c_family(n) ** 3 / (32 * np.sqrt(3 * n * n + 3 * n + 1))
        assert b.binding_branch == "volume"
        assert b.lower == pytest.approx(ref, rel=1e-9)


def test_errors():
    with pytest.raises(ValueError):
        cheeger_lower(0.0, CurvatureInterval(0.1, 1.0))
    with pytest.raises(ValueError):
        cheeger_lower(1.0, CurvatureInterval(-0.1, 1.0))
    with pytest.raises(ValueError):
        berger_upper(-1.0)
    with pytest.raises(ValueError):
        curvature_interval_for((1, 2), "huang-constants")
    with pytest.raises(ValueError):
        CurvatureInterval(2.0, 1.0)
