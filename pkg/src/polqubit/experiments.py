"""Scenario runner: named simulation setups with CSV/JSON output.

Five scenarios are provided:

* ``hadamard-bloch``   -- one Hadamard-pulse trajectory, Bloch components per sample;
* ``single-qubit-sweep`` -- Hadamard-gate fidelity/entropy vs a decoherence rate;
* ``cphase-sweep``     -- CPHASE fidelity/concurrence vs a decoherence rate;
* ``concurrence-map``  -- concurrence over a (gamma_d, gamma_r) grid;
* ``gate-table``       -- every analytic gate construction vs its golden matrix.

Each run can emit a CSV table (floats at 12 significant digits, so reruns are
byte-identical), a pretty-printed JSON metadata file (version, config echo,
wall-clock time), and optionally a rendered PNG figure.  Fidelity reference
states are always the rate-zero evolution of the same scenario.
"""
from __future__ import annotations

import csv
import json
import math
import subprocess
import time
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .gates import (
    CNOT,
    CNOT_PULSE_FORM,
    CPHASE,
    HADAMARD,
    ISWAP,
    X_PI,
    Y_PI,
    Z_PI,
    cnot_composed,
    cnot_via_pulses,
    cphase_unitary,
    iswap_unitary,
    pulse_unitary,
)
from .hamiltonians import PulseParams, cphase_working_point, pulse_hamiltonian
from .lindblad import (
    CONVENTIONS,
    DEFAULT_CONVENTION,
    DecoherenceRates,
    Trajectory,
    evolve,
    evolve_endpoint_batch,
)
from .metrics import bloch_vector, concurrence, fidelity, purity, vn_entropy

#: Concurrence level marking the high-entanglement region of the map.
CONTOUR_LEVEL = 0.90


class ConfigError(ValueError):
    """A scenario configuration is malformed or inconsistent."""


class Scenario(Enum):
    HADAMARD_BLOCH = "hadamard-bloch"
    SINGLE_QUBIT_SWEEP = "single-qubit-sweep"
    CPHASE_SWEEP = "cphase-sweep"
    CONCURRENCE_MAP = "concurrence-map"
    GATE_TABLE = "gate-table"


@dataclass(frozen=True)
class SweepSpec:
    """A 1-D rate axis: [minimum, maximum] sampled at `count` points."""

    minimum: float = 0.0
    maximum: float = 0.4
    count: int = 21
    spacing: str = "linear"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.minimum) and math.isfinite(self.maximum)):
            raise ConfigError("sweep bounds must be finite")
        if self.minimum < 0 or self.maximum <= self.minimum:
            raise ConfigError(
                f"sweep range must satisfy 0 <= min < max, got "
                f"[{self.minimum}, {self.maximum}]")
        if self.count < 2:
            raise ConfigError(f"sweep count must be >= 2, got {self.count}")
        if self.spacing not in ("linear", "log"):
            raise ConfigError(f"unknown sweep spacing {self.spacing!r}")
        if self.spacing == "log" and self.minimum <= 0:
            raise ConfigError("log spacing requires a positive minimum")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.minimum, self.maximum, self.count)
        return np.linspace(self.minimum, self.maximum, self.count)


def _default_pulse() -> PulseParams:
    """The Hadamard pulse: axis (x+z)/sqrt(2), half-angle pi/2."""
    return PulseParams.from_axis(p_norm=1.0, theta=0.0, phi=math.pi / 4,
                                 tau=math.pi / 2)


@dataclass
class ScenarioConfig:
    """Everything a scenario run needs; built directly or from JSON + flags."""

    scenario: Scenario
    initial_state: str | Sequence | None = None
    gamma_r: float = 0.0
    gamma_d: float = 0.0
    sweep: SweepSpec | None = None
    sweep_channel: str = "gamma_d"
    map_gamma_d: SweepSpec | None = None
    map_gamma_r: SweepSpec | None = None
    pulse: PulseParams | None = None
    j12: float = 1.0
    dt: float | None = None
    sample_every: int = 1
    lowering_convention: str = DEFAULT_CONVENTION
    output: str | Path | None = None
    render: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.scenario, Scenario):
            raise ConfigError(f"scenario must be a Scenario, got {self.scenario!r}")
        for name in ("gamma_r", "gamma_d"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ConfigError(f"{name} must be finite and >= 0, got {value!r}")
        if self.sweep_channel not in ("gamma_d", "gamma_r"):
            raise ConfigError(
                f"sweep channel must be gamma_d or gamma_r, got {self.sweep_channel!r}")
        if self.dt is not None and not (math.isfinite(self.dt) and self.dt > 0):
            raise ConfigError(f"dt must be > 0, got {self.dt!r}")
        if not isinstance(self.sample_every, int) or self.sample_every < 1:
            raise ConfigError(f"sample_every must be an integer >= 1, got {self.sample_every!r}")
        if self.lowering_convention not in CONVENTIONS:
            raise ConfigError(
                f"lowering convention must be one of {CONVENTIONS}, "
                f"got {self.lowering_convention!r}")
        if not math.isfinite(self.j12) or self.j12 <= 0:
            raise ConfigError(f"j12 must be finite and > 0, got {self.j12!r}")
        if self.render and self.output is None:
            raise ConfigError("figure rendering requires an output path")


# ---------------------------------------------------------------------------
# Initial states

def _basis_state(label: str) -> np.ndarray:
    e0 = np.array([1, 0], dtype=complex)
    e1 = np.array([0, 1], dtype=complex)
    if label == "0":
        return e0
    if label == "1":
        return e1
    if label == "cw":
        return (e0 + e1) / math.sqrt(2)
    if label == "ccw":
        return (e0 - e1) / math.sqrt(2)
    raise ConfigError(f"unknown state label {label!r} "
                      "(expected 0, 1, cw, or ccw)")


def resolve_state(value: str | Sequence, dim: int) -> np.ndarray:
    """Turn a state label or amplitude sequence into a normalized vector.

    Labels: "0", "1", "cw", "ccw" for one qubit; a comma-joined pair such as
    "cw,ccw" for two qubits.  Amplitudes may be numbers or [re, im] pairs and
    are normalized.
    """
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",")]
        if len(parts) == 1:
            psi = _basis_state(parts[0])
        elif len(parts) == 2:
            psi = np.kron(_basis_state(parts[0]), _basis_state(parts[1]))
        else:
            raise ConfigError(f"state label {value!r} must name one or two factors")
    else:
        try:
            amps = [complex(a[0], a[1]) if isinstance(a, (list, tuple)) else complex(a)
                    for a in value]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad state amplitudes {value!r}: {exc}") from exc
        psi = np.array(amps, dtype=complex)
    if psi.shape != (dim,):
        raise ConfigError(
            f"initial state has dimension {psi.shape[0]}, scenario needs {dim}")
    norm = np.linalg.norm(psi)
    if norm < 1e-12:
        raise ConfigError("initial state must be a nonzero vector")
    return psi / norm


def _initial_density(cfg: ScenarioConfig, dim: int, default: str) -> np.ndarray:
    psi = resolve_state(cfg.initial_state if cfg.initial_state is not None else default, dim)
    return np.outer(psi, psi.conj())


# ---------------------------------------------------------------------------
# Output plumbing

def version_string() -> str:
    """Package version, suffixed with the current git revision when available."""
    try:
        from importlib.metadata import version
        base = version("polqubit")
    except Exception:
        base = "0.0.0"
    try:
        proc = subprocess.run(
            ["git", "rev-parse", "--short", "HEAD"],
            cwd=Path(__file__).resolve().parent, capture_output=True,
            text=True, timeout=2.0, check=False)
        sha = proc.stdout.strip()
        if proc.returncode == 0 and sha:
            return f"{base}+g{sha}"
    except Exception:
        pass
    return base


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return format(float(value), ".12g")


def _output_stem(output: str | Path) -> Path:
    path = Path(output)
    if path.suffix in (".csv", ".json", ".png"):
        path = path.with_suffix("")
    return path


def write_csv(path: Path, header: Sequence[str], rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def write_json(path: Path, payload) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _config_echo(cfg: ScenarioConfig) -> dict:
    def spec_dict(s: SweepSpec | None):
        if s is None:
            return None
        return {"minimum": s.minimum, "maximum": s.maximum,
                "count": s.count, "spacing": s.spacing}

    initial = cfg.initial_state
    if initial is not None and not isinstance(initial, str):
        initial = [[complex(a).real, complex(a).imag] for a in initial]
    pulse = None
    if cfg.pulse is not None:
        pulse = {"p0": cfg.pulse.p0, "theta": cfg.pulse.theta,
                 "delta_eps": cfg.pulse.delta_eps, "tau": cfg.pulse.tau}
    return {
        "scenario": cfg.scenario.value,
        "initial_state": initial,
        "gamma_r": cfg.gamma_r,
        "gamma_d": cfg.gamma_d,
        "sweep": spec_dict(cfg.sweep),
        "sweep_channel": cfg.sweep_channel,
        "map_gamma_d": spec_dict(cfg.map_gamma_d),
        "map_gamma_r": spec_dict(cfg.map_gamma_r),
        "pulse": pulse,
        "j12": cfg.j12,
        "dt": cfg.dt,
        "sample_every": cfg.sample_every,
        "lowering_convention": cfg.lowering_convention,
        "output": None if cfg.output is None else str(cfg.output),
    }


def _write_meta(stem: Path, cfg: ScenarioConfig, summary: dict,
                outputs: list[Path], wall_time: float) -> Path:
    payload = {
        "version": version_string(),
        "scenario": cfg.scenario.value,
        "config": _config_echo(cfg),
        "summary": summary,
        "outputs": sorted(p.name for p in outputs),
        "wall_time_s": wall_time,
    }
    return write_json(stem.with_suffix(".meta.json"), payload)


def _render(result, stem: Path) -> Path:
    from . import plots
    return plots.render(result, stem.with_suffix(".png"))


# ---------------------------------------------------------------------------
# Results

@dataclass
class BlochTraceResult:
    trajectory: Trajectory
    times: np.ndarray
    vectors: np.ndarray        # (n, 3)
    norms: np.ndarray
    purities: np.ndarray
    final_norm: float
    files: list[Path] = field(default_factory=list)


@dataclass
class SweepResult:
    scenario: str
    channel: str
    rates: np.ndarray
    fidelity: np.ndarray
    entropy: np.ndarray
    concurrence: np.ndarray | None = None
    bloch_norm: np.ndarray | None = None
    spacing: str = "linear"
    files: list[Path] = field(default_factory=list)


@dataclass
class MapResult:
    gamma_d: np.ndarray
    gamma_r: np.ndarray
    grid: np.ndarray           # (len(gamma_d), len(gamma_r))
    files: list[Path] = field(default_factory=list)

    def contour_cells(self, level: float = CONTOUR_LEVEL) -> list[tuple[float, float, float]]:
        """Grid cells whose concurrence is at or above `level`, row-major."""
        cells = []
        for i, gd in enumerate(self.gamma_d):
            for j, gr in enumerate(self.gamma_r):
                if self.grid[i, j] >= level:
                    cells.append((float(gd), float(gr), float(self.grid[i, j])))
        return cells


@dataclass
class GateTableResult:
    entries: list[dict]
    iswap_on_01: np.ndarray
    max_deviation: float
    files: list[Path] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Scenario runners

def _expect(cfg: ScenarioConfig, scenario: Scenario) -> None:
    if cfg.scenario is not scenario:
        raise ConfigError(
            f"config is for {cfg.scenario.value!r}, runner expects {scenario.value!r}")


def _rates_for(cfg: ScenarioConfig) -> DecoherenceRates:
    return DecoherenceRates(gamma_r=cfg.gamma_r, gamma_d=cfg.gamma_d)


def run_hadamard_bloch(cfg: ScenarioConfig) -> BlochTraceResult:
    """One pulse trajectory with Bloch components sampled along the way.

    Defaults: Hadamard pulse (axis tilt pi/4, half-angle pi/2) on |0>.
    CSV columns: t, x, y, z, norm, purity.
    """
    _expect(cfg, Scenario.HADAMARD_BLOCH)
    start = time.perf_counter()
    pulse = cfg.pulse if cfg.pulse is not None else _default_pulse()
    h = pulse_hamiltonian(pulse)
    rho0 = _initial_density(cfg, 2, default="0")
    traj = evolve(h, rho0, _rates_for(cfg), pulse.tau, cfg.dt,
                  cfg.sample_every, cfg.lowering_convention)
    vectors = np.empty((len(traj.times), 3))
    purities = np.empty(len(traj.times))
    for k, rho in enumerate(traj.states):
        vectors[k] = bloch_vector(rho).as_array()
        purities[k] = purity(rho)
    norms = np.linalg.norm(vectors, axis=1)
    result = BlochTraceResult(trajectory=traj, times=traj.times, vectors=vectors,
                              norms=norms, purities=purities,
                              final_norm=float(norms[-1]))
    if cfg.output is not None:
        stem = _output_stem(cfg.output)
        rows = np.column_stack([traj.times, vectors, norms, purities])
        result.files.append(write_csv(stem.with_suffix(".csv"),
                                      ["t", "x", "y", "z", "norm", "purity"], rows))
        if cfg.render:
            result.files.append(_render(result, stem))
        summary = {"final_norm": result.final_norm,
                   "final_purity": float(purities[-1])}
        result.files.append(_write_meta(stem, cfg, summary, result.files,
                                        time.perf_counter() - start))
    return result


def _sweep_endpoints(cfg: ScenarioConfig, h: np.ndarray, rho0: np.ndarray,
                     t_final: float, rates: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(ideal rate-zero endpoint, per-rate endpoints) for a one-channel sweep."""
    zeros = np.zeros_like(rates)
    gamma_d = rates if cfg.sweep_channel == "gamma_d" else zeros
    gamma_r = rates if cfg.sweep_channel == "gamma_r" else zeros
    ideal = evolve_endpoint_batch(h, rho0, np.zeros(1), np.zeros(1), t_final,
                                  cfg.dt, cfg.lowering_convention)[0]
    endpoints = evolve_endpoint_batch(h, rho0, gamma_r, gamma_d, t_final,
                                      cfg.dt, cfg.lowering_convention)
    return ideal, endpoints


def run_single_qubit_sweep(cfg: ScenarioConfig) -> SweepResult:
    """Hadamard-gate fidelity and entropy vs one decoherence rate.

    Defaults: initial |1>, gamma_d swept linearly over [0, 0.4] at 21 points.
    Fidelity is taken against the rate-zero endpoint.  CSV columns:
    <channel>, fidelity, entropy, bloch_norm.
    """
    _expect(cfg, Scenario.SINGLE_QUBIT_SWEEP)
    start = time.perf_counter()
    pulse = cfg.pulse if cfg.pulse is not None else _default_pulse()
    h = pulse_hamiltonian(pulse)
    rho0 = _initial_density(cfg, 2, default="1")
    spec = cfg.sweep if cfg.sweep is not None else SweepSpec()
    rates = spec.values()
    ideal, endpoints = _sweep_endpoints(cfg, h, rho0, pulse.tau, rates)
    fid = np.array([fidelity(ideal, rho) for rho in endpoints])
    ent = np.array([vn_entropy(rho) for rho in endpoints])
    norms = np.array([bloch_vector(rho).norm for rho in endpoints])
    result = SweepResult(scenario=cfg.scenario.value, channel=cfg.sweep_channel,
                         rates=rates, fidelity=fid, entropy=ent,
                         bloch_norm=norms, spacing=spec.spacing)
    if cfg.output is not None:
        stem = _output_stem(cfg.output)
        rows = np.column_stack([rates, fid, ent, norms])
        result.files.append(write_csv(
            stem.with_suffix(".csv"),
            [cfg.sweep_channel, "fidelity", "entropy", "bloch_norm"], rows))
        if cfg.render:
            result.files.append(_render(result, stem))
        summary = {"fidelity_at_max_rate": float(fid[-1]),
                   "entropy_at_max_rate": float(ent[-1])}
        result.files.append(_write_meta(stem, cfg, summary, result.files,
                                        time.perf_counter() - start))
    return result


def run_cphase_sweep(cfg: ScenarioConfig) -> SweepResult:
    """CPHASE fidelity and concurrence vs one decoherence rate.

    Defaults: initial |cw,ccw>, Ising working point at J12 = j12, tau = pi/(4 j12),
    gamma_d swept linearly over [0, 0.4 j12] at 21 points.  CSV columns:
    <channel>, fidelity, concurrence, entropy.
    """
    _expect(cfg, Scenario.CPHASE_SWEEP)
    start = time.perf_counter()
    h = cphase_working_point(cfg.j12)
    tau = math.pi / (4 * cfg.j12)
    rho0 = _initial_density(cfg, 4, default="cw,ccw")
    spec = cfg.sweep if cfg.sweep is not None else SweepSpec(maximum=0.4 * cfg.j12)
    rates = spec.values()
    ideal, endpoints = _sweep_endpoints(cfg, h, rho0, tau, rates)
    fid = np.array([fidelity(ideal, rho) for rho in endpoints])
    conc = np.array([concurrence(rho) for rho in endpoints])
    ent = np.array([vn_entropy(rho) for rho in endpoints])
    result = SweepResult(scenario=cfg.scenario.value, channel=cfg.sweep_channel,
                         rates=rates, fidelity=fid, entropy=ent,
                         concurrence=conc, spacing=spec.spacing)
    if cfg.output is not None:
        stem = _output_stem(cfg.output)
        rows = np.column_stack([rates, fid, conc, ent])
        result.files.append(write_csv(
            stem.with_suffix(".csv"),
            [cfg.sweep_channel, "fidelity", "concurrence", "entropy"], rows))
        if cfg.render:
            result.files.append(_render(result, stem))
        summary = {"fidelity_at_max_rate": float(fid[-1]),
                   "concurrence_at_max_rate": float(conc[-1])}
        result.files.append(_write_meta(stem, cfg, summary, result.files,
                                        time.perf_counter() - start))
    return result


def run_concurrence_map(cfg: ScenarioConfig) -> MapResult:
    """Concurrence of the CPHASE output over a (gamma_d, gamma_r) grid.

    Defaults: 41x41 linear grid over [0, 0.4 j12]^2, integrated in one batched
    run at dt = tau/400 (validated against the superoperator oracle; see
    README).  The CSV is row-major in (gamma_d, gamma_r); cells at or above
    concurrence 0.90 are echoed to a companion `.contour.csv`.
    """
    _expect(cfg, Scenario.CONCURRENCE_MAP)
    start = time.perf_counter()
    h = cphase_working_point(cfg.j12)
    tau = math.pi / (4 * cfg.j12)
    rho0 = _initial_density(cfg, 4, default="cw,ccw")
    spec_d = cfg.map_gamma_d if cfg.map_gamma_d is not None else SweepSpec(
        maximum=0.4 * cfg.j12, count=41)
    spec_r = cfg.map_gamma_r if cfg.map_gamma_r is not None else SweepSpec(
        maximum=0.4 * cfg.j12, count=41)
    gd_axis, gr_axis = spec_d.values(), spec_r.values()
    pairs_d = np.repeat(gd_axis, len(gr_axis))
    pairs_r = np.tile(gr_axis, len(gd_axis))
    dt = cfg.dt if cfg.dt is not None else tau / 400
    endpoints = evolve_endpoint_batch(h, rho0, pairs_r, pairs_d, tau, dt,
                                      cfg.lowering_convention)
    grid = np.array([concurrence(rho) for rho in endpoints]).reshape(
        len(gd_axis), len(gr_axis))
    result = MapResult(gamma_d=gd_axis, gamma_r=gr_axis, grid=grid)
    if cfg.output is not None:
        stem = _output_stem(cfg.output)
        rows = np.column_stack([pairs_d, pairs_r, grid.reshape(-1)])
        header = ["gamma_d", "gamma_r", "concurrence"]
        result.files.append(write_csv(stem.with_suffix(".csv"), header, rows))
        result.files.append(write_csv(
            Path(str(stem) + ".contour.csv"), header, result.contour_cells()))
        if cfg.render:
            result.files.append(_render(result, stem))
        summary = {
            "min_concurrence": float(grid.min()),
            "max_concurrence": float(grid.max()),
            "cells_at_or_above_contour": len(result.contour_cells()),
        }
        result.files.append(_write_meta(stem, cfg, summary, result.files,
                                        time.perf_counter() - start))
    return result


def _phase_aligned_deviation(a: np.ndarray, golden: np.ndarray) -> float:
    """max |a - c*golden| over the unit phase c read off golden's largest entry."""
    idx = np.unravel_index(np.argmax(np.abs(golden)), golden.shape)
    c = a[idx] / golden[idx] if abs(golden[idx]) > 0 else 0.0
    c = c / abs(c) if abs(c) > 0 else 1.0
    return float(np.max(np.abs(a - c * golden)))


def run_gate_table(cfg: ScenarioConfig) -> GateTableResult:
    """Compare every analytic gate construction with its golden matrix.

    Reports per-gate max |difference| after global-phase alignment, plus the
    amplitudes iSWAP produces on |01>.  Output is a JSON report.
    """
    _expect(cfg, Scenario.GATE_TABLE)
    start = time.perf_counter()
    quarter = math.pi / 4
    half = math.pi / 2
    rows = [
        ("x-pi", "pulse theta=0 phi=pi/2 p*tau=pi/2",
         pulse_unitary(1.0, 0.0, half, half), X_PI),
        ("y-pi", "pulse theta=pi/2 phi=pi/2 p*tau=pi/2",
         pulse_unitary(1.0, half, half, half), Y_PI),
        ("z-pi", "pulse phi=pi p*tau=pi/2",
         pulse_unitary(1.0, 0.0, math.pi, half), Z_PI),
        ("hadamard", "pulse theta=0 phi=pi/4 p*tau=pi/2",
         pulse_unitary(1.0, 0.0, quarter, half), HADAMARD),
        ("cphase", "ising coupling j*tau=pi/4",
         cphase_unitary(quarter), CPHASE),
        ("iswap", "xy coupling j*tau=pi/4",
         iswap_unitary(quarter), ISWAP),
        ("cnot", "(1 x H) . cphase . (1 x H)",
         cnot_composed(), CNOT),
        ("cnot-pulse-form", "conditional pulse blocks, phi2=pi/2",
         cnot_via_pulses(half), CNOT_PULSE_FORM),
    ]
    entries = [
        {"name": name, "construction": desc,
         "max_abs_deviation": _phase_aligned_deviation(built, golden)}
        for name, desc, built, golden in rows
    ]
    iswap_on_01 = iswap_unitary(quarter) @ np.array([0, 1, 0, 0], dtype=complex)
    result = GateTableResult(
        entries=entries, iswap_on_01=iswap_on_01,
        max_deviation=max(e["max_abs_deviation"] for e in entries))
    if cfg.output is not None:
        stem = _output_stem(cfg.output)
        payload = {
            "gates": entries,
            "iswap_on_01": [[a.real, a.imag] for a in iswap_on_01],
            "max_deviation": result.max_deviation,
        }
        result.files.append(write_json(stem.with_suffix(".json"), payload))
        if cfg.render:
            result.files.append(_render(result, stem))
        summary = {"max_deviation": result.max_deviation}
        result.files.append(_write_meta(stem, cfg, summary, result.files,
                                        time.perf_counter() - start))
    return result


_RUNNERS = {
    Scenario.HADAMARD_BLOCH: run_hadamard_bloch,
    Scenario.SINGLE_QUBIT_SWEEP: run_single_qubit_sweep,
    Scenario.CPHASE_SWEEP: run_cphase_sweep,
    Scenario.CONCURRENCE_MAP: run_concurrence_map,
    Scenario.GATE_TABLE: run_gate_table,
}


def run_scenario(cfg: ScenarioConfig):
    """Dispatch a config to its scenario runner and return the result object."""
    return _RUNNERS[cfg.scenario](cfg)


# ---------------------------------------------------------------------------
# Config assembly (JSON file + flag overrides)

_SWEEP_KEYS = {"minimum", "maximum", "count", "spacing", "channel"}


def _sweep_from(data: Mapping, context: str) -> tuple[SweepSpec, str | None]:
    unknown = set(data) - _SWEEP_KEYS
    if unknown:
        raise ConfigError(f"unknown {context} keys: {sorted(unknown)}")
    kwargs = {}
    for key in ("minimum", "maximum"):
        if key in data:
            kwargs[key] = _as_float(data[key], f"{context}.{key}")
    if "count" in data:
        kwargs["count"] = _as_int(data["count"], f"{context}.count")
    if "spacing" in data:
        kwargs["spacing"] = data["spacing"]
    return SweepSpec(**kwargs), data.get("channel")


def _as_float(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    return float(value)


def _as_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    return value


_CONFIG_KEYS = {
    "scenario", "initial_state", "gamma_r", "gamma_d", "sweep", "map",
    "pulse", "j12", "dt", "sample_every", "lowering_convention", "output",
}


def load_config(path: str | Path) -> dict:
    """Read a JSON config document; must be a single object."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must contain a JSON object")
    return data


def build_config(data: Mapping) -> ScenarioConfig:
    """Build a validated ScenarioConfig from a plain mapping."""
    unknown = set(data) - _CONFIG_KEYS - {"render"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "scenario" not in data:
        raise ConfigError("config needs a scenario")
    try:
        scenario = Scenario(data["scenario"])
    except ValueError:
        valid = ", ".join(s.value for s in Scenario)
        raise ConfigError(
            f"unknown scenario {data['scenario']!r} (expected one of: {valid})") from None

    kwargs: dict = {"scenario": scenario}
    if "initial_state" in data:
        kwargs["initial_state"] = data["initial_state"]
    for key in ("gamma_r", "gamma_d", "j12"):
        if key in data:
            kwargs[key] = _as_float(data[key], key)
    if data.get("dt") is not None:
        kwargs["dt"] = _as_float(data["dt"], "dt")
    if "sample_every" in data:
        kwargs["sample_every"] = _as_int(data["sample_every"], "sample_every")
    if "lowering_convention" in data:
        kwargs["lowering_convention"] = data["lowering_convention"]
    if data.get("output") is not None:
        kwargs["output"] = str(data["output"])
    if "render" in data:
        kwargs["render"] = bool(data["render"])

    if data.get("sweep") is not None:
        if not isinstance(data["sweep"], Mapping):
            raise ConfigError("sweep must be an object")
        spec, channel = _sweep_from(data["sweep"], "sweep")
        kwargs["sweep"] = spec
        if channel is not None:
            kwargs["sweep_channel"] = channel
    if data.get("map") is not None:
        map_data = data["map"]
        if not isinstance(map_data, Mapping) or set(map_data) - {"gamma_d", "gamma_r"}:
            raise ConfigError("map must be an object with gamma_d/gamma_r axes")
        for axis, attr in (("gamma_d", "map_gamma_d"), ("gamma_r", "map_gamma_r")):
            if axis in map_data:
                spec, channel = _sweep_from(map_data[axis], f"map.{axis}")
                if channel is not None:
                    raise ConfigError(f"map.{axis} does not take a channel")
                kwargs[attr] = spec
    if data.get("pulse") is not None:
        pulse_data = data["pulse"]
        if not isinstance(pulse_data, Mapping):
            raise ConfigError("pulse must be an object")
        try:
            if "p_norm" in pulse_data:
                allowed = {"p_norm", "theta", "phi", "tau"}
                if set(pulse_data) - allowed:
                    raise ConfigError(f"pulse keys must be {sorted(allowed)}")
                kwargs["pulse"] = PulseParams.from_axis(
                    p_norm=_as_float(pulse_data["p_norm"], "pulse.p_norm"),
                    theta=_as_float(pulse_data.get("theta", 0.0), "pulse.theta"),
                    phi=_as_float(pulse_data.get("phi", 0.0), "pulse.phi"),
                    tau=_as_float(pulse_data["tau"], "pulse.tau"))
            else:
                allowed = {"p0", "theta", "delta_eps", "tau"}
                if set(pulse_data) - allowed:
                    raise ConfigError(f"pulse keys must be {sorted(allowed)}")
                kwargs["pulse"] = PulseParams(
                    p0=_as_float(pulse_data.get("p0", 0.0), "pulse.p0"),
                    theta=_as_float(pulse_data.get("theta", 0.0), "pulse.theta"),
                    delta_eps=_as_float(pulse_data.get("delta_eps", 0.0), "pulse.delta_eps"),
                    tau=_as_float(pulse_data["tau"], "pulse.tau"))
        except KeyError as exc:
            raise ConfigError(f"pulse needs a {exc.args[0]} field") from exc
        except ValueError as exc:
            raise ConfigError(f"bad pulse parameters: {exc}") from exc
    try:
        return ScenarioConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
