"""Analytic gate unitaries for pulsed trap qubits and coupled trap pairs.

Single-qubit gates come from the closed form of the drive-pulse propagator
e^{-i p_norm (sigma.n_hat) tau}; two-qubit gates from the Ising / XY coupling
propagators at their working points and from pulse-block composition.  Global
phases are kept exactly as the closed forms produce them; comparisons that
should ignore an overall phase go through `equal_up_to_global_phase`.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .linalg import IDENTITY2, as_matrix, is_unitary, kron

_SQRT2 = math.sqrt(2)

#: Plain involutory Hadamard (no phase prefactor), used in compositions.
HADAMARD_PLAIN = np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2


class GateLabel(enum.Enum):
    X_PI = "x-pi"
    Y_PI = "y-pi"
    Z_PI = "z-pi"
    HADAMARD = "hadamard"
    CPHASE = "cphase"
    ISWAP = "iswap"
    CNOT = "cnot"
    CUSTOM = "custom"


def pulse_unitary(p_norm: float, theta: float, phi: float, tau: float) -> np.ndarray:
    """Closed-form propagator of a drive pulse of strength p_norm and length tau.

    The rotation axis is n_hat = (sin(phi)cos(theta), sin(phi)sin(theta), cos(phi));
    the half-angle is p_norm * tau.
    """
    if p_norm < 0 or tau < 0:
        raise ValueError("p_norm and tau must be >= 0")
    a = p_norm * tau
    c, s = math.cos(a), math.sin(a)
    cphi, sphi = math.cos(phi), math.sin(phi)
    return np.array([
        [c - 1j * cphi * s, -1j * np.exp(-1j * theta) * sphi * s],
        [-1j * np.exp(1j * theta) * sphi * s, c + 1j * cphi * s],
    ])


def cphase_unitary(j_tau: float) -> np.ndarray:
    """Ising-coupling propagator e^{i j_tau} diag(1, 1, 1, e^{-4i j_tau})."""
    return np.exp(1j * j_tau) * np.diag(
        [1, 1, 1, np.exp(-4j * j_tau)]).astype(complex)


def iswap_unitary(j_tau: float) -> np.ndarray:
    """XY-coupling propagator: identity on |00>,|11>, rotation on the |01>,|10> block."""
    c, s = math.cos(2 * j_tau), math.sin(2 * j_tau)
    out = np.eye(4, dtype=complex)
    out[1, 1] = out[2, 2] = c
    out[1, 2] = out[2, 1] = -1j * s
    return out


def cnot_composed() -> np.ndarray:
    """CNOT as (1 x H) . diag(1,1,1,-1) . (1 x H); equals the canonical CNOT."""
    h2 = kron(IDENTITY2, HADAMARD_PLAIN)
    return h2 @ np.diag([1, 1, 1, -1]).astype(complex) @ h2


def cnot_via_pulses(phi2: float) -> np.ndarray:
    """Conditional pulse-block construction of CNOT.

    Block-diagonal: the control-|0> block is a full-cycle pulse (p_norm*tau = pi,
    giving -identity), the control-|1> block a half-cycle pulse (p_norm*tau = pi/2)
    with axis tilt phi2.  phi2 = pi/2 yields -CNOT with an extra i on the target
    swap block.
    """
    block0 = pulse_unitary(1.0, 0.0, math.pi / 2, math.pi)
    block1 = pulse_unitary(1.0, 0.0, phi2, math.pi / 2)
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = block0
    out[2:, 2:] = block1
    return out


def apply(u: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Apply a unitary to a state vector: |psi'> = U |psi>."""
    u = as_matrix(u)
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (u.shape[0],):
        raise ValueError(f"dimension mismatch: U is {u.shape}, psi is {psi.shape}")
    if not is_unitary(u):
        raise ValueError("operator is not unitary within 1e-10")
    return u @ psi


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray,
                             tol: float = 1e-10) -> bool:
    """True iff a = c*b for some unit-modulus scalar c, within Frobenius tol.

    The candidate phase is read off at b's largest-modulus entry.
    """
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) == 0.0:
        return bool(np.linalg.norm(a) < tol)
    c = a[idx] / b[idx]
    if abs(c) == 0.0:
        return bool(np.linalg.norm(a - b) < tol)
    c /= abs(c)
    return bool(np.linalg.norm(a - c * b) < tol)


# Canonical gate matrices, with the exact phases their constructions produce.
X_PI = np.array([[0, -1j], [-1j, 0]])                     # pulse at theta=0, phi=pi/2
Y_PI = np.array([[0, -1], [1, 0]], dtype=complex)         # pulse at theta=phi=pi/2
Z_PI = np.array([[1j, 0], [0, -1j]])                      # pulse at phi=pi
HADAMARD = -1j * HADAMARD_PLAIN                           # pulse at theta=0, phi=pi/4
CPHASE = np.exp(1j * math.pi / 4) * np.diag([1, 1, 1, -1]).astype(complex)
ISWAP = np.array([
    [1, 0, 0, 0],
    [0, 0, -1j, 0],
    [0, -1j, 0, 0],
    [0, 0, 0, 1],
])
CNOT = np.array([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
], dtype=complex)
#: Pulse-block CNOT at phi2 = pi/2: -CNOT with an extra factor i on the swap block.
CNOT_PULSE_FORM = -np.array([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1j],
    [0, 0, 1j, 0],
])

CANONICAL: dict[GateLabel, np.ndarray] = {
    GateLabel.X_PI: X_PI,
    GateLabel.Y_PI: Y_PI,
    GateLabel.Z_PI: Z_PI,
    GateLabel.HADAMARD: HADAMARD,
    GateLabel.CPHASE: CPHASE,
    GateLabel.ISWAP: ISWAP,
    GateLabel.CNOT: CNOT,
}
