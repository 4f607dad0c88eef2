from fractions import Fraction
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aloffwallach import pinching as pn
from aloffwallach.structure import DegenerateIndexError

pos = st.integers(1, 50)


def test_a1_family_value():
    assert pn.coefficients((1, 2)).a[1] == Fraction(215, 56)


def test_xi0_family_value():
    assert pn.coefficients((1, 2)).xi[0] == pytest.approx(-27 / (8 * sqrt(21)), rel=1e-15)


def test_d_fixed():
    assert pn.coefficients((1, 1)).d == (Fraction(5, 8), Fraction(1, 8), Fraction(1, 8))


def test_degenerate_rejected():
    with pytest.raises(DegenerateIndexError):
        pn.coefficients((2, -2))


@pytest.mark.parametrize("n", [1, 2, 7, 40])
def test_branch_peaks(n):
    co = pn.coefficients((n, n + 1))
    peaks = [pn.lambda_branch(co, j, co.xi[j]) for j in range(3)]
    assert peaks[0] == pytest.approx(5 / 8, abs=1e-15)
    assert peaks[1] == pytest.approx(3 * n * n / (8 + 24 * n + 24 * n * n), abs=1e-15)
    assert peaks[2] == pytest.approx(1 / 8, abs=1e-15)


@settings(max_examples=50)
@given(pos, pos, st.floats(-1, 1), st.floats(-1, 1))
def test_branch_concave(p, q, x, y):
    co = pn.coefficients((p, q))
    for j in range(3):
        mid = pn.lambda_branch(co, j, 0.5 * (x + y))
        assert mid >= 0.5 * (pn.lambda_branch(co, j, x) + pn.lambda_branch(co, j, y)) - 1e-14


@settings(max_examples=40, deadline=None)
@given(pos, pos)
def test_lambda_hat_methods_agree(p, q):
    co = pn.coefficients((p, q))
    assert abs(pn.lambda_hat(co) - pn.lambda_hat(co, "candidates")) < 1e-10


def test_lambda_hat_bracket():
    lh = pn.lambda_hat(pn.coefficients((1, 2)))
    assert 1 / 25 < lh < 2 / 37
    assert lh == pytest.approx(pn.c_family(1), abs=1e-9)


@settings(max_examples=50)
@given(pos, pos)
def test_lambda_bar_symmetric_rational_form(p, q):
    lb = pn.lambda_bar(pn.simplex_quadratic(pn.coefficients((p, q))))
    assert lb.value == lb.closed_form == pn.lambda_bar_from_D(p, q)
    assert lb.gates_hold


def test_lambda_bar_printed_form_is_not_the_simplex_minimum():
    # the published rational form is asymmetric and differs off the diagonal
    assert pn.lambda_bar_printed(1, 2) == Fraction(1757, 28762)
    assert pn.lambda_bar_printed(1, 2) != pn.lambda_bar_printed(2, 1)
    assert pn.lambda_bar_from_D(1, 2) == Fraction(251, 4276)
    assert pn.lambda_bar_printed(1, 1) == pn.lambda_bar_from_D(1, 1) == Fraction(2, 37)


def test_adjugate_row_sums():
    sq = pn.simplex_quadratic(pn.coefficients((1, 2)))
    A = sq.matrix()
    D = np.linalg.det(A) * np.linalg.inv(A) @ np.ones(3)
    assert np.allclose([float(v) for v in sq.D], D, rtol=1e-12)


def test_kmax_family():
    for n in (1, 2, 10):
        km = pn.k_max(pn.coefficients((n, n + 1)))
        assert km.lambda0_gate and km.kmax_gate
        assert km.value == pn.C_family(n)
        nu1, nu2 = pn.nu_family(n)
        assert km.nu1 == pytest.approx(nu1, rel=1e-12)
        assert km.nu2 == pytest.approx(nu2, rel=1e-12)
        assert float(km.value) - km.nu2 == pytest.approx(pn.a1_minus_nu2_family(n), abs=1e-12)


def test_kmax_gate_fails_on_diagonal():
    km = pn.k_max(pn.coefficients((1, 1)))
    assert not km.lambda0_gate and km.value is None


def test_pinch_falls_back_to_oracle():
    res = pn.pinch((1, 1), oracle_budget=2000)
    assert res.flags["k_max_method"] == "oracle"
    assert res.k_max == pytest.approx(29 / 8, abs=1e-8)
    with pytest.raises(pn.CurvatureUnavailableError):
        pn.pinch((1, 1), oracle_budget=None)


def test_pinch_w12():
    res = pn.pinch((1, 2), oracle_budget=None)
    assert res.k_max == pytest.approx(215 / 56, rel=1e-15)
    assert res.k_min == pytest.approx(0.047546894253, abs=1e-11)
    assert res.lambda_hat < 2 / 37 < res.lambda_bar


def test_family_monotone():
    lb = [pn.lambda_bar_from_D(n, n + 1) for n in range(1, 101)]
    assert all(a > b for a, b in zip(lb, lb[1:]))
    assert all(v > Fraction(2, 37) for v in lb)


def test_family_limits():
    assert abs(pn.c_family(10**4) - 2 / 37) < 1e-6
    assert abs(float(pn.C_family(10**7)) - 29 / 8) < 1e-6


def test_nonsharp_sandwich():
    for n in range(1, 30):
        res = pn.pinch((n, n + 1), oracle_budget=None)
        assert 1 / 25 <= res.k_min and res.k_max <= 4
