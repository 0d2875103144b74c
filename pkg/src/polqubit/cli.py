"""Command-line entry point: `sim <scenario> [--config file.json] [flags...]`.

Flags override config-file fields.  Exit codes: 0 on success, 2 on a
configuration problem, 3 when a state invariant fails during integration.
Each run writes its table (CSV or JSON), a `.meta.json` run record, and a
rendered PNG figure unless --no-figure is given.
"""
from __future__ import annotations

import argparse
import sys

from .experiments import (
    BlochTraceResult,
    ConfigError,
    GateTableResult,
    MapResult,
    Scenario,
    SweepResult,
    build_config,
    load_config,
    run_scenario,
    version_string,
)
from .lindblad import CONVENTIONS, IntegrationError


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sim",
        description="Simulate trap-qubit gate scenarios and write CSV/JSON reports.")
    parser.add_argument("scenario", choices=[s.value for s in Scenario],
                        help="which scenario to run")
    parser.add_argument("--config", metavar="FILE",
                        help="JSON config file; flags override its fields")
    parser.add_argument("--initial-state", metavar="STATE",
                        help='state label ("0", "1", "cw", "ccw", or a pair like "cw,ccw")')
    parser.add_argument("--gamma-d", type=float, metavar="RATE",
                        help="pure-dephasing rate")
    parser.add_argument("--gamma-r", type=float, metavar="RATE",
                        help="spontaneous-relaxation rate")
    parser.add_argument("--dt", type=float, help="integrator step")
    parser.add_argument("--sample-every", type=int, metavar="N",
                        help="record every N-th integrator step")
    parser.add_argument("--lowering-convention", choices=list(CONVENTIONS),
                        help="relaxation-operator normalization")
    parser.add_argument("--j12", type=float, help="two-qubit coupling strength")
    parser.add_argument("--sweep-channel", choices=["gamma_d", "gamma_r"],
                        help="which rate a sweep varies")
    parser.add_argument("--sweep-min", type=float, metavar="RATE")
    parser.add_argument("--sweep-max", type=float, metavar="RATE")
    parser.add_argument("--sweep-count", type=int, metavar="N")
    parser.add_argument("--sweep-spacing", choices=["linear", "log"])
    parser.add_argument("--map-count", type=int, metavar="N",
                        help="points per axis of the concurrence map")
    parser.add_argument("--output", metavar="PATH",
                        help="output stem (default: the scenario name)")
    parser.add_argument("--no-figure", action="store_true",
                        help="skip PNG rendering")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {version_string()}")
    return parser


def _assemble(args: argparse.Namespace) -> dict:
    data = load_config(args.config) if args.config else {}
    data["scenario"] = args.scenario
    for flag, key in (("initial_state", "initial_state"), ("gamma_d", "gamma_d"),
                      ("gamma_r", "gamma_r"), ("dt", "dt"),
                      ("sample_every", "sample_every"),
                      ("lowering_convention", "lowering_convention"),
                      ("j12", "j12"), ("output", "output")):
        value = getattr(args, flag)
        if value is not None:
            data[key] = value
    sweep_flags = {"channel": args.sweep_channel, "minimum": args.sweep_min,
                   "maximum": args.sweep_max, "count": args.sweep_count,
                   "spacing": args.sweep_spacing}
    sweep_flags = {k: v for k, v in sweep_flags.items() if v is not None}
    if sweep_flags:
        base = data.get("sweep") or {}
        if not isinstance(base, dict):
            raise ConfigError("sweep must be an object")
        data["sweep"] = {**base, **sweep_flags}
    if args.map_count is not None:
        base = data.get("map") or {}
        if not isinstance(base, dict):
            raise ConfigError("map must be an object")
        merged = {}
        for axis in ("gamma_d", "gamma_r"):
            axis_base = base.get(axis) or {}
            if not isinstance(axis_base, dict):
                raise ConfigError(f"map.{axis} must be an object")
            merged[axis] = {**axis_base, "count": args.map_count}
        data["map"] = merged
    if data.get("output") is None:
        data["output"] = args.scenario
    data["render"] = not args.no_figure
    return data


def _summarize(result) -> list[str]:
    if isinstance(result, BlochTraceResult):
        return [f"final Bloch norm: {result.final_norm:.6f}"]
    if isinstance(result, SweepResult):
        lines = [f"{result.channel} in [{result.rates[0]:g}, {result.rates[-1]:g}], "
                 f"{len(result.rates)} points",
                 f"fidelity at max rate: {result.fidelity[-1]:.6f}"]
        if result.concurrence is not None:
            lines.append(f"concurrence at max rate: {result.concurrence[-1]:.6f}")
        lines.append(f"entropy at max rate: {result.entropy[-1]:.6f}")
        return lines
    if isinstance(result, MapResult):
        return [f"grid {len(result.gamma_d)}x{len(result.gamma_r)}, "
                f"concurrence range [{result.grid.min():.6f}, {result.grid.max():.6f}]",
                f"cells with concurrence >= 0.90: {len(result.contour_cells())}"]
    if isinstance(result, GateTableResult):
        return [f"max gate deviation: {result.max_deviation:.3e}"]
    return []


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = build_config(_assemble(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        result = run_scenario(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except IntegrationError as exc:
        print(f"integration error: {exc}", file=sys.stderr)
        return 3
    for line in _summarize(result):
        print(line)
    for path in result.files:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
