"""State diagnostics: Bloch vector, purity, fidelity, entropy, concurrence.

Conventions baked in here:

* Bloch components read off the density matrix as x = 2 Re(rho_01),
  y = 2 Im(rho_10), z = rho_00 - rho_11.
* Fidelity is the Uhlmann overlap Tr sqrt( sqrt(rho1) rho2 sqrt(rho1) ).
* Entropy is base-2, so the single-qubit maximum is 1 and the two-qubit
  maximum is 2.
* Concurrence follows Wootters' spin-flip construction with
  Sigma = sigma_y (x) sigma_y, evaluated through the Hermitian product
  sqrt(rho) rho_tilde sqrt(rho) so only the Hermitian eigensolver is needed.

Tiny negative eigenvalues from round-off (above -1e-8, the same floor the
density-operator validator uses) are clamped to zero before roots and logs;
anything worse raises.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import SIGMA_Y, hermitian_eig, kron, sqrt_psd
from .lindblad import validate_density

_EIG_FLOOR = -1e-8
_RANGE_TOL = 1e-9


@dataclass(frozen=True)
class BlochVector:
    """Real 3-vector representation of a single-qubit state."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if self.norm > 1 + 1e-9:
            raise ValueError(f"Bloch vector norm {self.norm!r} exceeds 1")

    @property
    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def bloch_vector(rho: np.ndarray) -> BlochVector:
    """Bloch components of a 2x2 density operator."""
    rho = validate_density(rho)
    if rho.shape != (2, 2):
        raise ValueError(f"bloch_vector needs a 2x2 state, got {rho.shape}")
    return BlochVector(
        x=float(2 * rho[0, 1].real),
        y=float(2 * rho[1, 0].imag),
        z=float((rho[0, 0] - rho[1, 1]).real),
    )


def _clamped_sqrt_eigs(m: np.ndarray, floor: float | None = None) -> np.ndarray:
    """Square roots of the eigenvalues of a numerically-PSD Hermitian matrix.

    Besides clamping round-off negatives, eigenvalues below 1e-13 of the
    largest are zeroed: for rank-deficient products (any pure input state)
    the eigensolver returns strays of order 1e-16 whose square roots would
    otherwise pollute the sum at the 1e-8 level.  `floor` additionally zeroes
    eigenvalues below an absolute round-off threshold before the root.
    """
    w, _ = hermitian_eig((m + m.conj().T) / 2)
    if w[0] < _EIG_FLOOR:
        raise ValueError(f"matrix has negative eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    w[w < w[-1] * 1e-13] = 0.0
    if floor is not None:
        w[w < floor] = 0.0
    return np.sqrt(w)


def _psd_projected(rho: np.ndarray) -> np.ndarray:
    """rho with round-off negatives (above the -1e-8 floor) clamped to zero.

    Keeps states that passed density validation acceptable to the stricter
    sqrt_psd, whose own floor is -1e-10.
    """
    w, v = hermitian_eig((rho + rho.conj().T) / 2)
    if w[0] < _EIG_FLOOR:
        raise ValueError(f"state has negative eigenvalue {w[0]:.3e}")
    if w[0] >= 0:
        return rho
    return (v * np.clip(w, 0.0, None)) @ v.conj().T


def _check_range(value: float, name: str, upper: float = 1.0) -> float:
    if value < -_RANGE_TOL or value > upper + _RANGE_TOL:
        raise ValueError(f"{name} = {value!r} out of range [0, {upper}]")
    return float(min(max(value, 0.0), upper))


def fidelity(rho_ideal: np.ndarray, rho: np.ndarray) -> float:
    """Uhlmann fidelity Tr sqrt( sqrt(rho_ideal) rho sqrt(rho_ideal) ) in [0, 1]."""
    rho_ideal = validate_density(rho_ideal)
    rho = validate_density(rho)
    if rho_ideal.shape != rho.shape:
        raise ValueError(f"dimension mismatch: {rho_ideal.shape} vs {rho.shape}")
    root = sqrt_psd(_psd_projected(rho_ideal))
    value = _clamped_sqrt_eigs(root @ rho @ root).sum()
    return _check_range(float(value), "fidelity")


def vn_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy -sum(lambda log2 lambda), with 0 log 0 = 0."""
    rho = validate_density(rho)
    w, _ = hermitian_eig(rho)
    if w[0] < _EIG_FLOOR:
        raise ValueError(f"state has negative eigenvalue {w[0]:.3e}")
    w = w[w >= 1e-14]
    return float(max(0.0, -(w * np.log2(w)).sum()))


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence max(0, l1-l2-l3-l4) of a two-qubit state.

    The l_i are the decreasing square roots of the eigenvalues of
    sqrt(rho) rho_tilde sqrt(rho), where rho_tilde = Sigma rho* Sigma with
    Sigma = sigma_y (x) sigma_y and the conjugate taken entrywise in the
    computational basis.  Eigenvalues below 1e-9 are treated as round-off
    zeros before the root, so separable states report exactly 0.
    """
    rho = validate_density(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 state, got {rho.shape}")
    sigma = kron(SIGMA_Y, SIGMA_Y)
    rho_tilde = sigma @ rho.conj() @ sigma
    root = sqrt_psd(_psd_projected(rho))
    lam = _clamped_sqrt_eigs(root @ rho_tilde @ root, floor=1e-9)[::-1]
    value = lam[0] - lam[1:].sum()
    return _check_range(max(0.0, float(value)), "concurrence")


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2) in (0, 1]."""
    rho = validate_density(rho)
    value = float(np.trace(rho @ rho).real)
    return _check_range(value, "purity")
