"""Dense complex linear algebra for the 2x2 and 4x4 matrices used throughout.

Everything operates on plain ``numpy`` arrays of dtype complex128.  Only the
two sizes that occur for one and two qubits are admitted; inputs are validated
so that NaN/Inf or wrongly shaped arrays fail loudly at the boundary.
"""
from __future__ import annotations

import numpy as np

QUBIT_DIMS = (2, 4)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)
IDENTITY4 = np.eye(4, dtype=complex)


def as_matrix(a: np.ndarray) -> np.ndarray:
    """Validate and return `a` as a complex square matrix of dimension 2 or 4."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] not in QUBIT_DIMS:
        raise ValueError(f"dimension must be one of {QUBIT_DIMS}, got {m.shape[0]}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with dimension checking."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices: result[2i+k, 2j+l] = a[i,j] b[k,l]."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError("kron expects two 2x2 factors")
    return np.kron(a, b)


def is_hermitian(a: np.ndarray, tol: float = 1e-10) -> bool:
    a = as_matrix(a)
    return bool(np.linalg.norm(a - a.conj().T) <= tol)


def is_unitary(a: np.ndarray, tol: float = 1e-10) -> bool:
    a = as_matrix(a)
    return bool(np.linalg.norm(a @ a.conj().T - np.eye(a.shape[0])) <= tol)


def is_psd(a: np.ndarray, tol: float = 1e-8) -> bool:
    """Hermitian with all eigenvalues >= -tol."""
    a = as_matrix(a)
    if not is_hermitian(a, max(tol, 1e-10)):
        return False
    return bool(np.linalg.eigvalsh(a)[0] >= -tol)


def hermitian_eig(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, unitary matrix of column eigenvectors)
    such that a = V diag(w) V^dagger.
    """
    a = as_matrix(a)
    if not is_hermitian(a):
        raise ValueError("hermitian_eig requires a Hermitian matrix")
    w, v = np.linalg.eigh(a)
    return w, v


def sqrt_psd(a: np.ndarray) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite matrix.

    Eigenvalues in [-1e-10, 0) are treated as round-off and clamped to zero;
    anything more negative is rejected.
    """
    w, v = hermitian_eig(a)
    if w[0] < -1e-10:
        raise ValueError(f"matrix is not PSD (min eigenvalue {w[0]:.3e})")
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def expm_hermitian_scaled(h: np.ndarray, t: float) -> np.ndarray:
    """Unitary e^{-i h t} for Hermitian h, via eigendecomposition."""
    w, v = hermitian_eig(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T
