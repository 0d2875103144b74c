"""Density-operator evolution under a Lindblad master equation.

The generator is

    drho/dt = -i[H, rho] + gamma_r L[sigma_-] rho + gamma_d L[sigma_z] rho,

with L[A]rho = A rho A^dag - (1/2){A^dag A, rho}.  For two qubits the collapse
operators act per trap (sigma x 1 and 1 x sigma) with equal rates on both.

Two conventions exist for the relaxation operator:

* ``"unnormalized"``: the raw Pauli difference sigma_x - i*sigma_y = [[0,0],[2,0]],
  which quadruples the effective population-decay rate;
* ``"normalized"``: the standard (sigma_x - i*sigma_y)/2 = |1><0|, making gamma_r
  the population-decay rate itself.

The normalized form is the package default (`DEFAULT_CONVENTION`): it is the
one that reproduces the reference figure values for relaxation (see README).

Integration is fixed-step classical RK4 with state invariants re-checked at
every sample; an independent verification path exponentiates the vectorized
generator directly (`superoperator_oracle`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .linalg import IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z, as_matrix, is_hermitian, kron

DEFAULT_CONVENTION = "normalized"
CONVENTIONS = ("normalized", "unnormalized")

#: Default number of RK4 steps when no dt is given: dt = t_final / 2000.
DEFAULT_STEPS = 2000


class IntegrationError(RuntimeError):
    """A state invariant failed during integration."""


@dataclass(frozen=True)
class DecoherenceRates:
    """Spontaneous-relaxation and pure-dephasing rates (units of the drive norm
    for single-qubit runs, of the coupling J for two-qubit runs)."""

    gamma_r: float = 0.0
    gamma_d: float = 0.0

    def __post_init__(self) -> None:
        for name, value in (("gamma_r", self.gamma_r), ("gamma_d", self.gamma_d)):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass
class Trajectory:
    """Time-ordered density-operator samples from one `evolve` call."""

    times: np.ndarray
    states: np.ndarray  # shape (n_samples, dim, dim)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=complex)
        if len(self.times) != len(self.states):
            raise ValueError("times and states lengths differ")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def lowering_operator(convention: str = "unnormalized") -> np.ndarray:
    """The relaxation (lowering) operator in the {|0>, |1>} basis.

    By default returns the raw difference sigma_x - i*sigma_y = [[0,0],[2,0]],
    which maps |0> to 2|1> and annihilates |1>; pass ``"normalized"`` for the
    1/2-scaled standard form |1><0|.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    sigma_minus = SIGMA_X - 1j * SIGMA_Y
    return sigma_minus / 2 if convention == "normalized" else sigma_minus


def validate_density(rho: np.ndarray, *, herm_tol: float = 1e-10,
                     trace_tol: float = 1e-10, eig_floor: float = -1e-8) -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity (up to round-off) of rho."""
    rho = as_matrix(rho)
    herm_err = np.linalg.norm(rho - rho.conj().T)
    if herm_err > herm_tol:
        raise ValueError(f"density operator not Hermitian (deviation {herm_err:.3e})")
    trace_err = abs(rho.trace() - 1.0)
    if trace_err > trace_tol:
        raise ValueError(f"density operator trace deviates from 1 by {trace_err:.3e}")
    min_eig = np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0]
    if min_eig < eig_floor:
        raise ValueError(f"density operator has negative eigenvalue {min_eig:.3e}")
    return rho


def dissipator(a: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """L[A]rho = A rho A^dag - (1/2){A^dag A, rho}."""
    a, rho = as_matrix(a), as_matrix(rho)
    if a.shape != rho.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {rho.shape}")
    m = a.conj().T @ a
    return a @ rho @ a.conj().T - 0.5 * (m @ rho + rho @ m)


def two_qubit_collapse_ops(convention: str = "unnormalized") -> list[tuple[np.ndarray, str]]:
    """Per-trap collapse operators on the 4-dimensional space, with rate tags.

    Relaxation and dephasing each act independently on both traps:
    [(s- x 1, "gamma_r"), (1 x s-, "gamma_r"), (s_z x 1, "gamma_d"), (1 x s_z, "gamma_d")].
    """
    s_minus = lowering_operator(convention)
    return [
        (kron(s_minus, IDENTITY2), "gamma_r"),
        (kron(IDENTITY2, s_minus), "gamma_r"),
        (kron(SIGMA_Z, IDENTITY2), "gamma_d"),
        (kron(IDENTITY2, SIGMA_Z), "gamma_d"),
    ]


def _collapse_terms(dim: int, rates: DecoherenceRates,
                    convention: str) -> list[tuple[float, np.ndarray]]:
    """(rate, operator) pairs for the given dimension, dropping zero rates."""
    if dim == 2:
        pairs = [(rates.gamma_r, lowering_operator(convention)),
                 (rates.gamma_d, SIGMA_Z)]
    else:
        tag_rate = {"gamma_r": rates.gamma_r, "gamma_d": rates.gamma_d}
        pairs = [(tag_rate[tag], op) for op, tag in two_qubit_collapse_ops(convention)]
    return [(g, op) for g, op in pairs if g != 0.0]


def _step_count(t_final: float, dt: float) -> int:
    n = max(1, round(t_final / dt))
    return int(n)


def evolve(h: np.ndarray, rho0: np.ndarray, rates: DecoherenceRates,
           t_final: float, dt: float | None = None, sample_every: int = 1,
           convention: str = DEFAULT_CONVENTION) -> Trajectory:
    """Integrate the master equation with fixed-step RK4.

    Samples are stored every `sample_every` steps, always including t=0 and
    t=t_final, and each sampled state is re-checked for unit trace and
    Hermiticity (1e-9); a violation raises IntegrationError naming the step.
    dt defaults to t_final/2000 and is rounded so the steps tile [0, t_final]
    exactly.
    """
    h = as_matrix(h)
    if not is_hermitian(h):
        raise ValueError("evolve requires a Hermitian Hamiltonian")
    rho0 = validate_density(rho0)
    if h.shape != rho0.shape:
        raise ValueError(f"dimension mismatch: H is {h.shape}, rho0 is {rho0.shape}")
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")
    metadata = {"t_final": t_final, "convention": convention,
                "gamma_r": rates.gamma_r, "gamma_d": rates.gamma_d}
    if t_final == 0:
        return Trajectory(np.zeros(1), rho0[None, :, :].copy(), metadata)
    if dt is None:
        dt = t_final / DEFAULT_STEPS
    if dt <= 0:
        raise ValueError("dt must be > 0")
    n_steps = _step_count(t_final, dt)
    dt = t_final / n_steps
    terms = _collapse_terms(h.shape[0], rates, convention)
    rhs = _make_rhs(h, terms)

    times = [0.0]
    samples = [rho0.copy()]
    rho = rho0.astype(complex)
    for k in range(1, n_steps + 1):
        rho = _rk4_step(rhs, rho, dt)
        if k % sample_every == 0 or k == n_steps:
            _check_sample(rho, k)
            times.append(k * dt)
            samples.append(rho.copy())
    metadata["dt"] = dt
    metadata["n_steps"] = n_steps
    return Trajectory(np.array(times), np.array(samples), metadata)


def _make_rhs(h: np.ndarray, terms: list[tuple[float, np.ndarray]]):
    """Master-equation right-hand side as direct matrix products."""
    prepared = [(g, a, a.conj().T @ a) for g, a in terms]

    def rhs(rho: np.ndarray) -> np.ndarray:
        out = -1j * (h @ rho - rho @ h)
        for g, a, m in prepared:
            out = out + g * (a @ rho @ a.conj().T - 0.5 * (m @ rho + rho @ m))
        return out

    return rhs


def _rk4_step(rhs, rho: np.ndarray, dt: float) -> np.ndarray:
    k1 = rhs(rho)
    k2 = rhs(rho + 0.5 * dt * k1)
    k3 = rhs(rho + 0.5 * dt * k2)
    k4 = rhs(rho + dt * k3)
    return rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _check_sample(rho: np.ndarray, step: int) -> None:
    trace_err = abs(rho.trace() - 1.0)
    if trace_err > 1e-9:
        raise IntegrationError(
            f"trace deviated from 1 by {trace_err:.3e} at step {step}")
    herm_err = np.linalg.norm(rho - rho.conj().T)
    if herm_err > 1e-9:
        raise IntegrationError(
            f"Hermiticity violated by {herm_err:.3e} at step {step}")


def evolve_endpoint_batch(h: np.ndarray, rho0: np.ndarray,
                          gamma_r: np.ndarray, gamma_d: np.ndarray,
                          t_final: float, dt: float | None = None,
                          convention: str = DEFAULT_CONVENTION) -> np.ndarray:
    """Final states for many (gamma_r, gamma_d) pairs integrated in lockstep.

    Rate arrays broadcast across a stacked RK4 run, which is how parameter
    sweeps and the concurrence map stay fast; endpoints get the same invariant
    checks as `evolve` samples (plus a positivity floor of -1e-8).
    """
    h = as_matrix(h)
    if not is_hermitian(h):
        raise ValueError("evolve_endpoint_batch requires a Hermitian Hamiltonian")
    rho0 = validate_density(rho0)
    gamma_r = np.asarray(gamma_r, dtype=float)
    gamma_d = np.asarray(gamma_d, dtype=float)
    if gamma_r.shape != gamma_d.shape or gamma_r.ndim != 1:
        raise ValueError("gamma_r and gamma_d must be 1-D arrays of equal length")
    if np.any(gamma_r < 0) or np.any(gamma_d < 0):
        raise ValueError("rates must be >= 0")
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    n = len(gamma_r)
    dim = h.shape[0]
    rho = np.broadcast_to(rho0, (n, dim, dim)).astype(complex)
    if t_final == 0 or n == 0:
        return rho.copy()
    if dt is None:
        dt = t_final / DEFAULT_STEPS
    n_steps = _step_count(t_final, dt)
    dt = t_final / n_steps

    tagged = two_qubit_collapse_ops(convention) if dim == 4 else [
        (lowering_operator(convention), "gamma_r"), (SIGMA_Z, "gamma_d")]
    rate_vec = {"gamma_r": gamma_r[:, None, None], "gamma_d": gamma_d[:, None, None]}
    prepared = [(rate_vec[tag], a, a.conj().T @ a) for a, tag in tagged]

    def rhs(state: np.ndarray) -> np.ndarray:
        out = -1j * (h @ state - state @ h)
        for g, a, m in prepared:
            out = out + g * (a @ state @ a.conj().T - 0.5 * (m @ state + state @ m))
        return out

    for _ in range(n_steps):
        rho = _rk4_step(rhs, rho, dt)

    for i in range(n):
        try:
            validate_density(rho[i], herm_tol=1e-9, trace_tol=1e-9)
        except ValueError as exc:
            raise IntegrationError(
                f"endpoint invariant failed for rate pair index {i}: {exc}") from exc
    return rho


def _liouvillian(h: np.ndarray, terms: list[tuple[float, np.ndarray]]) -> np.ndarray:
    """Column-stacking Liouvillian matrix of the master-equation generator."""
    d = h.shape[0]
    eye = np.eye(d, dtype=complex)
    l_matrix = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for g, a in terms:
        m = a.conj().T @ a
        l_matrix += g * (np.kron(a.conj(), a)
                         - 0.5 * (np.kron(eye, m) + np.kron(m.T, eye)))
    return l_matrix


def superoperator_oracle(h: np.ndarray, rates: DecoherenceRates, t: float,
                         rho0: np.ndarray,
                         convention: str = DEFAULT_CONVENTION) -> np.ndarray:
    """Evolution by direct exponentiation of the vectorized generator.

    rho is stacked column-wise, the (dim^2 x dim^2) generator matrix is built
    explicitly, and e^{Lt} is applied via scaling-and-squaring.  Serves as an
    integrator-independent check on `evolve`.
    """
    h = as_matrix(h)
    if not is_hermitian(h):
        raise ValueError("superoperator_oracle requires a Hermitian Hamiltonian")
    rho0 = validate_density(rho0)
    if h.shape != rho0.shape:
        raise ValueError(f"dimension mismatch: H is {h.shape}, rho0 is {rho0.shape}")
    if t < 0:
        raise ValueError("t must be >= 0")
    d = h.shape[0]
    terms = _collapse_terms(d, rates, convention)
    l_matrix = _liouvillian(h, terms)
    vec = rho0.flatten(order="F")
    out = scipy.linalg.expm(l_matrix * t) @ vec
    return out.reshape((d, d), order="F")
