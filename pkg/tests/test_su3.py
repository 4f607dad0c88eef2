import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aloffwallach import su3

coords = st.lists(st.floats(-5, 5), min_size=8, max_size=8).map(np.array)


def test_gell_mann_orthonormal_for_killing():
    basis = su3.generator_basis()
    assert np.allclose(basis.gram(), np.eye(8), atol=1e-14)


def test_gell_mann_index_range():
    with pytest.raises(ValueError):
        su3.gell_mann(9)


@given(coords)
def test_coordinates_round_trip(x):
    X = su3.from_coordinates(x)
    assert su3.is_algebra_element(X)
    assert np.allclose(su3.coordinates(X), x, atol=1e-12)


@settings(max_examples=30)
@given(coords)
def test_exponential_is_unitary(x):
    assert su3.is_group_element(su3.exponential(su3.from_coordinates(x)), tol=1e-9)


def test_structure_constants_antisymmetric():
    c = su3.structure_constants(su3.generator_basis().generators)
    assert np.allclose(c, -np.swapaxes(c, 0, 1))
    assert np.allclose(c, -np.swapaxes(c, 1, 2))


def test_structure_constants_reject_non_orthonormal():
    with pytest.raises(ValueError):
        su3.structure_constants(2 * su3.generator_basis().generators)
