"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import pytest

from aloffwallach.verification import CHECKS

CRITERIA = [
    (1, "volume_constant"),
    (2, "density_closed_form"),
    (3, "volume_sandwich"),
    (4, "w11_pinching"),
    (5, "family_sharpness"),
    (6, "lambda_bar_dual"),
    (7, "lambda_hat_dual"),
    (8, "curvature_operator"),
    (9, "kmax_gates"),
    (10, "injectivity"),
    (11, "bi_invariant"),
    (12, "condition_II"),
]


@pytest.mark.parametrize("number,name", CRITERIA, ids=[f"c{n:02d}_{name}" for n, name in CRITERIA])
def test_criterion(number, name, verify_config, capsys):
    result = CHECKS[name](verify_config)
    with capsys.disabled():  # show the line even when the test passes
        print(f"\n[criterion {number:2d}] {result.line()}")
    assert result.passed, result.detail
