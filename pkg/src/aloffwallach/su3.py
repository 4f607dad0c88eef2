"""Matrix algebra for su(3) and SU(3).

Algebra elements are plain ``(3, 3)`` complex arrays (anti-Hermitian,
traceless); group elements are ``(3, 3)`` unitary arrays with unit
determinant.  Functions broadcast over leading axes where that is cheap.

The inner product throughout is the Killing metric normalised as
``k(X, Y) = 1/2 Re Tr(X Y^*)``, for which the eight elements ``i*lambda_k``
(Gell-Mann) form an orthonormal basis.
"""

from dataclasses import dataclass

import numpy as np

TOL = 1e-10

_GM = np.zeros((8, 3, 3), dtype=complex)
_GM[0][0, 1] = _GM[0][1, 0] = 1
_GM[1][0, 1], _GM[1][1, 0] = -1j, 1j
_GM[2] = np.diag([1, -1, 0])
_GM[3][0, 2] = _GM[3][2, 0] = 1
_GM[4][0, 2], _GM[4][2, 0] = -1j, 1j
_GM[5][1, 2] = _GM[5][2, 1] = 1
_GM[6][1, 2], _GM[6][2, 1] = -1j, 1j
_GM[7] = np.diag([1, 1, -2]) / np.sqrt(3)
_GM.setflags(write=False)

_PAULI = np.array(
    [[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex
)
_PAULI.setflags(write=False)


def gell_mann(index):
    """Return the Gell-Mann matrix ``lambda_index`` (1-based, 1..8)."""
    if not isinstance(index, (int, np.integer)) or not 1 <= index <= 8:
        raise ValueError(f"Gell-Mann index must be an integer in 1..8, got {index!r}")
    return _GM[index - 1].copy()


def pauli(index):
    """Return the Pauli matrix ``sigma_index`` (1-based, 1..3)."""
    if not isinstance(index, (int, np.integer)) or not 1 <= index <= 3:
        raise ValueError(f"Pauli index must be an integer in 1..3, got {index!r}")
    return _PAULI[index - 1].copy()


@dataclass(frozen=True)
class GeneratorBasis:
    """The eight generators ``i*lambda_k`` of su(3) and the Pauli matrices."""

    generators: np.ndarray
    pauli: np.ndarray

    def gram(self):
        return killing(self.generators[:, None], self.generators[None, :])


def generator_basis():
    return GeneratorBasis(generators=1j * np.array(_GM), pauli=np.array(_PAULI))


def dagger(X):
    return np.conj(np.swapaxes(X, -1, -2))


def is_algebra_element(X, tol=TOL):
    X = np.asarray(X)
    if X.shape[-2:] != (3, 3):
        return False
    herm = np.max(np.abs(X + dagger(X)))
    tr = np.max(np.abs(np.trace(X, axis1=-2, axis2=-1)))
    return bool(herm < tol and tr < tol)


def is_group_element(g, tol=TOL):
    g = np.asarray(g)
    if g.shape[-2:] != (3, 3):
        return False
    unit = np.max(np.abs(g @ dagger(g) - np.eye(3)))
    det = np.max(np.abs(np.linalg.det(g) - 1))
    return bool(unit < tol and det < tol)


def bracket(X, Y):
    """Matrix commutator ``XY - YX``."""
    return X @ Y - Y @ X


def killing(X, Y):
    """Killing inner product ``1/2 Re Tr(X Y^*)``; broadcasts over leading axes."""
    return 0.5 * np.real(np.einsum("...ij,...ij->...", X, np.conj(Y)))


def killing_norm(X):
    return np.sqrt(killing(X, X))


def coordinates(X):
    """Real coordinates of ``X`` in the orthonormal basis ``i*lambda_k``.

    Works for any trailing ``(3, 3)`` array; returns shape ``(..., 8)``.
    """
    # k(X, i*lambda) = 1/2 Re Tr(X (i*lambda)^*) = 1/2 Re Tr(-i X lambda)
    return 0.5 * np.real(np.einsum("...ij,kji->...k", -1j * np.asarray(X), _GM))


def from_coordinates(x):
    """Inverse of :func:`coordinates`."""
    return np.einsum("...k,kij->...ij", np.asarray(x, dtype=float), 1j * _GM)


def exponential(X):
    """Group exponential of an anti-Hermitian matrix.

    Computed from the eigendecomposition of the Hermitian matrix ``-iX``,
    so ``exp(X) = U diag(exp(i w)) U^*``.  Broadcasts over leading axes.
    """
    w, U = np.linalg.eigh(-1j * np.asarray(X))
    return (U * np.exp(1j * w)[..., None, :]) @ dagger(U)


def structure_constants(basis, tol=TOL):
    """Structure constants ``c[a, b, e]`` with ``[e_a, e_b] = sum_e c[a, b, e] e_e``.

    ``basis`` is a :class:`GeneratorBasis` or an ``(8, 3, 3)`` array that
    must be Killing-orthonormal.
    """
    E = basis.generators if isinstance(basis, GeneratorBasis) else np.asarray(basis)
    if E.shape != (8, 3, 3):
        raise ValueError(f"expected 8 generators of shape (3, 3), got {E.shape}")
    gram = killing(E[:, None], E[None, :])
    dev = np.max(np.abs(gram - np.eye(8)))
    if dev > tol:
        raise ValueError(f"basis is not Killing-orthonormal (max Gram deviation {dev:.3e})")
    br = bracket(E[:, None], E[None, :])
    return killing(br[:, :, None], E[None, None, :])
