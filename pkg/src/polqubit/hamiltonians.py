"""Hamiltonians for driven trap qubits and coupled trap pairs.

Basis convention: |0> = |p_x> = (1,0)^T and |1> = |p_y> = (0,1)^T, the dipolar
modes along the trap's principal axes.  Circulating-current (OAM) states are
the symmetric/antisymmetric combinations and are reached via `to_oam_basis`.
Two-qubit states are ordered |ab> with the control qubit as the left Kronecker
factor (index = 2a + b).  hbar = 1 throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z, as_matrix, kron

#: Columns are the circulating states expressed in the {|p_x>, |p_y>} basis:
#: |cw> = (|0> + |1>)/sqrt(2), |ccw> = (|0> - |1>)/sqrt(2).
OAM_TRANSFORM = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class TrapConfig:
    """Single-trap parameters: energy splitting and resonant drive components.

    delta_eps is E_x - E_y set by the trap ellipticity (either sign); px and py
    are the in-plane drive amplitudes entering as sigma_x / sigma_y coefficients.
    """

    delta_eps: float = 0.0
    px: float = 0.0
    py: float = 0.0

    def __post_init__(self) -> None:
        _require_finite(delta_eps=self.delta_eps, px=self.px, py=self.py)


@dataclass(frozen=True)
class PulseParams:
    """Drive-pulse parameters: amplitude p0, phase theta, splitting, duration.

    The rotation axis and angle follow from the derived norm
    p_norm = sqrt(p0^2 + delta_eps^2/4) and tilt phi = arccos(delta_eps/2p_norm).
    """

    p0: float
    theta: float
    delta_eps: float
    tau: float

    def __post_init__(self) -> None:
        _require_finite(p0=self.p0, theta=self.theta,
                        delta_eps=self.delta_eps, tau=self.tau)
        if self.p0 < 0:
            raise ValueError(f"p0 must be >= 0, got {self.p0}")
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")

    @property
    def p_norm(self) -> float:
        return math.hypot(self.p0, self.delta_eps / 2)

    @property
    def phi(self) -> float:
        """Axis tilt from +z, in [0, pi]."""
        p = self.p_norm
        if p == 0:
            raise ValueError("axis angle undefined for a zero-strength pulse")
        return math.acos(max(-1.0, min(1.0, self.delta_eps / (2 * p))))

    @classmethod
    def from_axis(cls, p_norm: float, theta: float, phi: float,
                  tau: float) -> "PulseParams":
        """Build pulse parameters from the rotation axis (theta, phi) and norm.

        Inverts the identities p0 = p_norm*sin(phi), delta_eps = 2*p_norm*cos(phi).
        """
        if p_norm < 0:
            raise ValueError(f"p_norm must be >= 0, got {p_norm}")
        return cls(p0=p_norm * math.sin(phi), theta=theta,
                   delta_eps=2 * p_norm * math.cos(phi), tau=tau)


@dataclass(frozen=True)
class CouplingConfig:
    """Inter-trap interaction strengths (J_x, J_y, J_z)."""

    jx: float = 0.0
    jy: float = 0.0
    jz: float = 0.0

    def __post_init__(self) -> None:
        _require_finite(jx=self.jx, jy=self.jy, jz=self.jz)

    @classmethod
    def ising(cls, j12: float) -> "CouplingConfig":
        return cls(jx=0.0, jy=0.0, jz=j12)

    @classmethod
    def xy(cls, j12: float) -> "CouplingConfig":
        return cls(jx=j12, jy=j12, jz=0.0)


def single_qubit_h(cfg: TrapConfig) -> np.ndarray:
    """H = px*sigma_x + py*sigma_y + (delta_eps/2)*sigma_z."""
    return (cfg.px * SIGMA_X + cfg.py * SIGMA_Y
            + (cfg.delta_eps / 2) * SIGMA_Z)


def pulse_axis(p: PulseParams) -> tuple[np.ndarray, float]:
    """Unit rotation axis and field norm of a drive pulse.

    Returns (n_hat, p_norm) with n_hat = (sin(phi)cos(theta), sin(phi)sin(theta),
    cos(phi)), so that p_norm * (sigma . n_hat) reproduces single_qubit_h for
    px = p0*cos(theta), py = p0*sin(theta).
    """
    p_norm = p.p_norm
    if p_norm == 0:
        raise ValueError("axis undefined: p0 and delta_eps are both zero")
    phi = p.phi
    n_hat = np.array([
        math.sin(phi) * math.cos(p.theta),
        math.sin(phi) * math.sin(p.theta),
        math.cos(phi),
    ])
    return n_hat, p_norm


def pulse_hamiltonian(p: PulseParams) -> np.ndarray:
    """Single-qubit Hamiltonian generated by a drive pulse.

    H = p0*cos(theta)*sigma_x + p0*sin(theta)*sigma_y + (delta_eps/2)*sigma_z,
    i.e. p_norm * (sigma . n_hat) for the axis returned by pulse_axis.
    """
    return single_qubit_h(TrapConfig(
        delta_eps=p.delta_eps,
        px=p.p0 * math.cos(p.theta),
        py=p.p0 * math.sin(p.theta),
    ))


def to_oam_basis(h: np.ndarray) -> np.ndarray:
    """Re-express a p-basis operator in the circulating {|cw>, |ccw>} basis."""
    h = as_matrix(h)
    if h.shape != (2, 2):
        raise ValueError("to_oam_basis expects a 2x2 operator")
    return OAM_TRANSFORM.conj().T @ h @ OAM_TRANSFORM


def interaction_h(c: CouplingConfig) -> np.ndarray:
    """Sum_k J_k * kron(sigma_k, sigma_k)."""
    out = np.zeros((4, 4), dtype=complex)
    for j, sigma in ((c.jx, SIGMA_X), (c.jy, SIGMA_Y), (c.jz, SIGMA_Z)):
        if j != 0.0:
            out += j * kron(sigma, sigma)
    return out


def two_qubit_h(t1: TrapConfig, t2: TrapConfig, c: CouplingConfig) -> np.ndarray:
    """kron(h1, 1) + kron(1, h2) + interaction term."""
    return (kron(single_qubit_h(t1), IDENTITY2)
            + kron(IDENTITY2, single_qubit_h(t2))
            + interaction_h(c))


def cphase_working_point(j12: float) -> np.ndarray:
    """Two-qubit Hamiltonian with both splittings at -2*J12, drives off, Ising coupling.

    Equals j12 * (sigma_z x sigma_z - sigma_z x 1 - 1 x sigma_z)
    = j12 * diag(-1, -1, -1, 3).
    """
    trap = TrapConfig(delta_eps=-2 * j12)
    return two_qubit_h(trap, trap, CouplingConfig.ising(j12))


def iswap_working_point(j12: float) -> np.ndarray:
    """Two-qubit Hamiltonian with degenerate traps, drives off, XY coupling."""
    trap = TrapConfig()
    return two_qubit_h(trap, trap, CouplingConfig.xy(j12))
