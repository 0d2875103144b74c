"""End-to-end acceptance checks.

Each test prints one `[criterion N] PASS/FAIL` line (visible with `pytest -s`)
before asserting, so a run doubles as a checklist.  Two sub-claims are known
not to hold numerically and are marked xfail(strict=True); see the test
docstrings for the measured values.
"""
import math
import time

import numpy as np
import pytest

from polqubit import gates, metrics
from polqubit.experiments import (
    Scenario,
    ScenarioConfig,
    SweepSpec,
    resolve_state,
    run_concurrence_map,
    run_cphase_sweep,
    run_hadamard_bloch,
    run_single_qubit_sweep,
)
from polqubit.hamiltonians import PulseParams
from polqubit.lindblad import (
    DEFAULT_CONVENTION,
    DecoherenceRates,
    evolve,
    superoperator_oracle,
)

from conftest import random_density, random_hermitian, random_unitary


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"[criterion {criterion}] {'PASS' if ok else 'FAIL'} — {detail}")


def _aligned_dev(u: np.ndarray, target: np.ndarray) -> float:
    """Max entry deviation after removing the optimal global phase."""
    tr = np.trace(target.conj().T @ u)
    phase = tr / abs(tr) if abs(tr) > 0 else 1.0
    return float(np.abs(u / phase - target).max())


# ---------------------------------------------------------------------------
# Shared heavy results

@pytest.fixture(scope="module")
def qubit_sweeps():
    """Single-qubit fidelity/entropy sweeps over both decay channels."""
    out = {}
    for channel in ("gamma_d", "gamma_r"):
        out[channel] = run_single_qubit_sweep(ScenarioConfig(
            scenario=Scenario.SINGLE_QUBIT_SWEEP, sweep_channel=channel))
    return out


@pytest.fixture(scope="module")
def cphase_sweeps():
    out = {}
    for channel in ("gamma_d", "gamma_r"):
        out[channel] = run_cphase_sweep(ScenarioConfig(
            scenario=Scenario.CPHASE_SWEEP, sweep_channel=channel))
    return out


@pytest.fixture(scope="module")
def concurrence_map():
    start = time.perf_counter()
    result = run_concurrence_map(ScenarioConfig(scenario=Scenario.CONCURRENCE_MAP))
    return result, time.perf_counter() - start


# ---------------------------------------------------------------------------
# 1. Gate algebra

def test_criterion_1_gate_algebra():
    start = time.perf_counter()
    golden = {
        "x-pi": (gates.X_PI, PulseParams.from_axis(1.0, 0.0, math.pi / 2, math.pi / 2)),
        "y-pi": (gates.Y_PI, PulseParams.from_axis(1.0, math.pi / 2, math.pi / 2, math.pi / 2)),
        "z-pi": (gates.Z_PI, PulseParams.from_axis(1.0, 0.0, math.pi, math.pi / 2)),
        "hadamard": (gates.HADAMARD, PulseParams.from_axis(1.0, 0.0, math.pi / 4, math.pi / 2)),
    }
    worst_pulse = 0.0
    for matrix, pulse in golden.values():
        u = gates.pulse_unitary(pulse.p_norm, pulse.theta, pulse.phi, pulse.tau)
        worst_pulse = max(worst_pulse, _aligned_dev(u, matrix))

    hadamard_pair = np.kron(np.eye(2), gates.HADAMARD_PLAIN)
    composed = hadamard_pair @ gates.CPHASE @ hadamard_pair
    cnot_dev = _aligned_dev(composed, gates.CNOT)
    cnot_exact = np.abs(gates.cnot_composed() - gates.CNOT).max()

    mapped = gates.ISWAP @ np.array([0, 1, 0, 0], dtype=complex)
    iswap_exact = np.array_equal(mapped, np.array([0, 0, -1j, 0]))
    iswap_unitary_dev = np.abs(gates.iswap_unitary(math.pi / 4) - gates.ISWAP).max()

    elapsed = time.perf_counter() - start
    ok = (worst_pulse < 1e-12 and cnot_dev < 1e-12 and cnot_exact < 1e-12
          and iswap_exact and iswap_unitary_dev < 1e-12 and elapsed < 1.0)
    _report("1", ok,
            f"pulse dev {worst_pulse:.2e}, CNOT dev {cnot_dev:.2e}, "
            f"iSWAP |01>->-i|10> exact={iswap_exact}, {elapsed:.3f} s")
    assert worst_pulse < 1e-12
    assert cnot_dev < 1e-12
    assert cnot_exact < 1e-12
    assert iswap_exact
    assert iswap_unitary_dev < 1e-12
    assert elapsed < 1.0


# ---------------------------------------------------------------------------
# 2. Hadamard pulse under decoherence (Bloch-norm endpoints)

def test_criterion_2_bloch_norm_endpoints():
    start = time.perf_counter()

    def run(convention):
        dephased = run_hadamard_bloch(ScenarioConfig(
            scenario=Scenario.HADAMARD_BLOCH, gamma_d=0.2,
            lowering_convention=convention)).final_norm
        relaxed = run_hadamard_bloch(ScenarioConfig(
            scenario=Scenario.HADAMARD_BLOCH, initial_state="1", gamma_r=0.2,
            lowering_convention=convention)).final_norm
        return dephased, relaxed

    results = {conv: run(conv) for conv in ("normalized", "unnormalized")}
    lands = {conv: abs(d - 0.70) <= 0.02 and abs(r - 0.96) <= 0.02
             for conv, (d, r) in results.items()}

    clean = run_hadamard_bloch(ScenarioConfig(
        scenario=Scenario.HADAMARD_BLOCH)).final_norm
    elapsed = time.perf_counter() - start

    ok = (any(lands.values()) and lands[DEFAULT_CONVENTION]
          and abs(clean - 1.0) <= 1e-6 and elapsed < 5.0)
    d, r = results[DEFAULT_CONVENTION]
    _report("2", ok,
            f"default '{DEFAULT_CONVENTION}': |u|(gamma_d=0.2)={d:.4f}, "
            f"|u|(gamma_r=0.2)={r:.4f}, zero-rate {clean:.8f}, "
            f"landing={lands}, {elapsed:.2f} s")
    assert any(lands.values()), f"no convention lands in tolerance: {results}"
    assert lands[DEFAULT_CONVENTION], (
        f"documented default must be the landing convention: {results}")
    assert abs(clean - 1.0) <= 1e-6
    assert elapsed < 5.0


# ---------------------------------------------------------------------------
# 3. CPHASE endpoints and the concurrence map

def test_criterion_3_cphase_endpoints_and_map(cphase_sweeps, concurrence_map):
    dephased = cphase_sweeps["gamma_d"]
    relaxed = cphase_sweeps["gamma_r"]
    result, elapsed = concurrence_map

    checks = {
        "C(gamma_d=0.4)=0.16±0.03": abs(dephased.concurrence[-1] - 0.16) <= 0.03,
        "F(gamma_d=0.4)=0.76±0.03": abs(dephased.fidelity[-1] - 0.76) <= 0.03,
        "F(gamma_r=0.4)=0.90±0.03": abs(relaxed.fidelity[-1] - 0.90) <= 0.03,
        "C(gamma_r=0.4)=0.66±0.03": abs(relaxed.concurrence[-1] - 0.66) <= 0.03,
        "C(0)=1±1e-6": abs(dephased.concurrence[0] - 1.0) <= 1e-6,
        "41x41 map under 30 s": result.grid.shape == (41, 41) and elapsed < 30.0,
    }
    ok = all(checks.values())
    _report("3 endpoints+map", ok,
            f"C_d={dephased.concurrence[-1]:.4f} F_d={dephased.fidelity[-1]:.4f} "
            f"F_r={relaxed.fidelity[-1]:.4f} C_r={relaxed.concurrence[-1]:.4f} "
            f"C(0)={dephased.concurrence[0]:.8f}, map {elapsed:.1f} s")
    for label, passed in checks.items():
        assert passed, label


@pytest.mark.xfail(strict=True, reason=(
    "the rectangle gamma_d <= 0.03, gamma_r <= 0.1 is not entirely inside the "
    "0.90 contour: its far corner reaches only C ~ 0.81.  The bounds match the "
    "contour's axis intercepts, which do not bound a sufficient box."))
def test_criterion_3_concurrence_box(concurrence_map):
    """C >= 0.90 throughout gamma_d <= 0.03 and gamma_r <= 0.1 (does not hold)."""
    result, _ = concurrence_map
    d_idx = result.gamma_d <= 0.03 + 1e-12
    r_idx = result.gamma_r <= 0.10 + 1e-12
    box = result.grid[np.ix_(d_idx, r_idx)]
    corner = result.grid[d_idx.nonzero()[0][-1], r_idx.nonzero()[0][-1]]
    ok = bool((box >= 0.90).all())
    _report("3 0.90-box", ok,
            f"min C in box = {box.min():.4f}, corner C(0.03, 0.10) = {corner:.4f}")
    assert ok


# ---------------------------------------------------------------------------
# 4. Fidelity/entropy monotonicity over decay-rate sweeps

def test_criterion_4_monotonicity(qubit_sweeps):
    dephased = qubit_sweeps["gamma_d"]
    relaxed = qubit_sweeps["gamma_r"]
    checks = {
        "grid of >= 20 points": len(dephased.rates) >= 20 and len(relaxed.rates) >= 20,
        "fidelity non-increasing (gamma_d)": bool(np.all(np.diff(dephased.fidelity) < 0)),
        "entropy non-decreasing (gamma_d)": bool(np.all(np.diff(dephased.entropy) > 0)),
        "fidelity non-increasing (gamma_r)": bool(np.all(np.diff(relaxed.fidelity) < 0)),
        "entropy non-decreasing (gamma_r)": bool(np.all(np.diff(relaxed.entropy) > 0)),
        "S_r(0.4) < S_d(0.4)": relaxed.entropy[-1] < dephased.entropy[-1],
    }
    ok = all(checks.values())
    _report("4 monotonicity", ok,
            f"S_d(0.4)={dephased.entropy[-1]:.4f}, S_r(0.4)={relaxed.entropy[-1]:.4f}, "
            f"{len(dephased.rates)} points per channel")
    for label, passed in checks.items():
        assert passed, label


@pytest.mark.xfail(strict=True, reason=(
    "S(gamma_d = 0.4) evaluates to ~0.787 for the Hadamard pulse, not > 0.9; "
    "the entropy approaches 1 only at stronger dephasing."))
def test_criterion_4_entropy_endpoint(qubit_sweeps):
    """S(gamma_d = 0.4) > 0.9 (does not hold at this pulse duration)."""
    endpoint = qubit_sweeps["gamma_d"].entropy[-1]
    ok = endpoint > 0.9
    _report("4 entropy endpoint", ok, f"S(gamma_d=0.4) = {endpoint:.6f}")
    assert ok


# ---------------------------------------------------------------------------
# 5. Integrator equivalence with the superoperator oracle

def test_criterion_5_oracle_equivalence():
    rng = np.random.default_rng(20240817)
    worst = {2: 0.0, 4: 0.0}
    for dim in (2, 4):
        for k in range(50):
            h = random_hermitian(rng, dim, scale=1.5)
            rho0 = random_density(rng, dim)
            rates = DecoherenceRates(gamma_r=rng.uniform(0, 0.5),
                                     gamma_d=rng.uniform(0, 0.5))
            convention = "normalized" if k % 2 == 0 else "unnormalized"
            end = evolve(h, rho0, rates, 1.0, convention=convention).final_state
            ref = superoperator_oracle(h, rates, 1.0, rho0, convention=convention)
            worst[dim] = max(worst[dim], np.linalg.norm(end - ref))

    ratios = []
    for _ in range(10):
        h = random_hermitian(rng, 2, scale=2.0)
        rho0 = random_density(rng, 2)
        rates = DecoherenceRates(gamma_r=rng.uniform(0.3, 0.6),
                                 gamma_d=rng.uniform(0.3, 0.6))
        ref = superoperator_oracle(h, rates, 1.0, rho0)
        errs = [np.linalg.norm(evolve(h, rho0, rates, 1.0, dt=1.0 / n).final_state - ref)
                for n in (100, 200)]
        ratios.append(errs[0] / errs[1])
    min_ratio = min(ratios)

    ok = worst[2] < 1e-8 and worst[4] < 1e-8 and min_ratio >= 12.0
    _report("5", ok,
            f"endpoint error: dim2 {worst[2]:.2e}, dim4 {worst[4]:.2e}; "
            f"halving-dt ratio >= {min_ratio:.1f} (4th order ~ 16)")
    assert worst[2] < 1e-8
    assert worst[4] < 1e-8
    assert min_ratio >= 12.0


# ---------------------------------------------------------------------------
# 6. Structural invariants

def test_criterion_6_invariants():
    rng = np.random.default_rng(20240818)
    min_eig = 1.0
    count = 0
    for dim, n_traj in ((2, 700), (4, 300)):
        for _ in range(n_traj):
            h = random_hermitian(rng, dim)
            rho0 = random_density(rng, dim)
            rates = DecoherenceRates(gamma_r=rng.uniform(0, 0.4),
                                     gamma_d=rng.uniform(0, 0.4))
            # evolve() itself enforces trace and Hermiticity within 1e-9 at
            # every sample and raises otherwise.
            traj = evolve(h, rho0, rates, 1.0, dt=1.0 / 60, sample_every=10)
            for state in traj.states:
                min_eig = min(min_eig, np.linalg.eigvalsh(state)[0])
            count += 1
    eig_ok = min_eig >= -1e-8

    worst_lu = 0.0
    for _ in range(200):
        rho = random_density(rng, 4)
        local = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
        rotated = local @ rho @ local.conj().T
        worst_lu = max(worst_lu, abs(metrics.concurrence(rho)
                                     - metrics.concurrence(rotated)))

    worst_sym = 0.0
    for _ in range(200):
        dim = 2 if rng.random() < 0.5 else 4
        a, b = random_density(rng, dim), random_density(rng, dim)
        worst_sym = max(worst_sym, abs(metrics.fidelity(a, b)
                                       - metrics.fidelity(b, a)))

    ok = eig_ok and worst_lu < 1e-9 and worst_sym < 1e-10
    _report("6", ok,
            f"{count} trajectories, min eigenvalue {min_eig:.2e}; "
            f"concurrence LU drift {worst_lu:.2e}; fidelity asymmetry {worst_sym:.2e}")
    assert eig_ok, f"minimum sampled eigenvalue {min_eig}"
    assert worst_lu < 1e-9
    assert worst_sym < 1e-10


# ---------------------------------------------------------------------------
# 7. Worked-example states

def test_criterion_7_worked_examples():
    # CPHASE on |cw, ccw>: equal-weight four-amplitude state, signs +,-,+,+.
    psi_in = resolve_state("cw,ccw", 4)
    psi_out = gates.CPHASE @ psi_in
    expected_cphase = np.exp(1j * math.pi / 4) * 0.5 * np.array([1, -1, 1, 1])
    dev_cphase = np.abs(psi_out - expected_cphase).max()

    # CNOT (pulse form) after CPHASE on |cw, 1>: two amplitudes remain.
    psi_in = resolve_state("cw,1", 4)
    psi_out = gates.CNOT_PULSE_FORM @ (gates.CPHASE @ psi_in)
    prefactor = np.exp(1j * math.pi / 4) / math.sqrt(2)
    expected_cnot = np.array([0, -prefactor, 1j * prefactor, 0])
    dev_cnot = np.abs(psi_out - expected_cnot).max()

    ok = dev_cphase < 1e-10 and dev_cnot < 1e-10
    _report("7", ok,
            f"CPHASE state dev {dev_cphase:.2e}, CNOT-after-CPHASE dev {dev_cnot:.2e}")
    assert dev_cphase < 1e-10
    assert dev_cnot < 1e-10
