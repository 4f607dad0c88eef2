import numpy as np
import pytest

from aloffwallach.curvature import (
    TwoPlane,
    base_curvature,
    base_curvature_operator,
    base_tensor_oneill,
    extremize_sectional,
    group_curvature,
    group_sectional,
    sectional_wpq,
)
from aloffwallach.pinching import coefficients
from aloffwallach.structure import MetricSpec, build_split
from aloffwallach.su3 import gell_mann


def _plane(idx, rng):
    _, _, base = base_curvature(idx)
    x, y = rng.normal(size=(2, 7))
    x /= np.linalg.norm(x)
    y -= (y @ x) * x
    y /= np.linalg.norm(y)
    F = base.frame
    return TwoPlane(np.einsum("k,kij->ij", x, F), np.einsum("k,kij->ij", y, F))


@pytest.mark.parametrize("pq", [(1, 1), (1, 2), (3, 7)])
def test_tensor_identities(pq):
    _, group, base = base_curvature(pq)
    for table in (group, base):
        assert max(table.symmetry_residuals().values()) < 1e-10


@pytest.mark.parametrize("pq", [(1, 1), (2, 3)])
def test_polarization_matches_full_oneill(pq):
    assert np.max(np.abs(base_curvature(pq)[2].rm - base_tensor_oneill(pq))) < 1e-12


def test_polarization_on_v2_planes_matches_group():
    # on V2 planes the bracket has no T component here, so base equals group
    split, group, base = base_curvature((1, 2))
    for a in range(3, 7):
        for b in range(a + 1, 7):
            kb = base.rm[a, b, b, a]
            kg = group.rm[a + 1, b + 1, b + 1, a + 1] + 0.75 * group.structure[a + 1, b + 1, 0] ** 2
            assert kb == pytest.approx(kg, abs=1e-12)


def test_homothety():
    split = build_split((1, 2))
    X, Y = gell_mann(4) * 1j, gell_mann(6) * 1j
    k1 = group_sectional(group_curvature(MetricSpec.wallach_w(), split), split, X, Y)
    k3 = group_sectional(group_curvature(MetricSpec.wallach_w().scaled(3.0), split), split, X, Y)
    assert k3 == pytest.approx(k1 / 3, rel=1e-12)


def test_plane_basis_invariance():
    rng = np.random.default_rng(0)
    P = _plane((1, 2), rng)
    c, s = np.cos(0.7), np.sin(0.7)
    Q = TwoPlane(c * P.X + s * P.Y, -s * P.X + c * P.Y)
    assert abs(sectional_wpq((1, 2), P) - sectional_wpq((1, 2), Q)) < 1e-10


def test_submersion_raises_curvature():
    rng = np.random.default_rng(1)
    split, group, _ = base_curvature((2, 3))
    for _ in range(20):
        P = _plane((2, 3), rng)
        assert sectional_wpq((2, 3), P) >= group_sectional(group, split, P.X, P.Y) - 1e-12


def test_non_orthonormal_plane_rejected():
    P = _plane((1, 1), np.random.default_rng(2))
    with pytest.raises(ValueError):
        sectional_wpq((1, 1), TwoPlane(2 * P.X, P.Y))


@pytest.mark.parametrize("pq", [(1, 2), (2, 5)])
def test_root_planes_give_a_coefficients(pq):
    co = coefficients(pq)
    for (i, j), a in zip(((1, 2), (6, 7), (4, 5)), co.a):
        X, Y = 1j * gell_mann(i), 1j * gell_mann(j)
        if i == 1:  # V1 vectors have k-tilde length 1/sqrt2
            X, Y = np.sqrt(2) * X, np.sqrt(2) * Y
        assert sectional_wpq(pq, TwoPlane(X, Y)) == pytest.approx(float(a), abs=1e-12)


def test_operator_symmetric():
    op = base_curvature_operator((1, 2))
    assert op.matrix.shape == (21, 21)
    assert np.allclose(op.matrix, op.matrix.T, atol=1e-12)


def test_extremize_deterministic_and_positive():
    a = extremize_sectional((2, 5), budget=2000, restarts=40, seed=7)
    b = extremize_sectional((2, 5), budget=2000, restarts=40, seed=7)
    assert (a.k_min, a.k_max) == (b.k_min, b.k_max)
    assert a.k_min > 0


def test_swap_symmetry():
    a = extremize_sectional((1, 3), budget=2000, restarts=40)
    b = extremize_sectional((3, 1), budget=2000, restarts=40)
    assert abs(a.k_min - b.k_min) < 2e-3 and abs(a.k_max - b.k_max) < 2e-3


def test_budget_floor():
    with pytest.raises(ValueError):
        extremize_sectional((1, 1), budget=10)
