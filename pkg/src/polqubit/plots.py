"""Matplotlib rendering of scenario results to PNG files.

Import is deliberately lazy from the runner side; this module forces the Agg
backend so rendering works headless.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import (
    CONTOUR_LEVEL,
    BlochTraceResult,
    GateTableResult,
    MapResult,
    SweepResult,
)


def render(result, path: str | Path) -> Path:
    """Render a scenario result to `path` and return it."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(result, BlochTraceResult):
        fig = _bloch_figure(result)
    elif isinstance(result, SweepResult):
        fig = _sweep_figure(result)
    elif isinstance(result, MapResult):
        fig = _map_figure(result)
    elif isinstance(result, GateTableResult):
        fig = _gate_figure(result)
    else:
        raise TypeError(f"no renderer for {type(result).__name__}")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _bloch_figure(result: BlochTraceResult):
    fig = plt.figure(figsize=(10, 4.5))
    ax3d = fig.add_subplot(1, 2, 1, projection="3d")
    u = np.linspace(0, 2 * np.pi, 24)
    v = np.linspace(0, np.pi, 12)
    ax3d.plot_wireframe(np.outer(np.cos(u), np.sin(v)),
                        np.outer(np.sin(u), np.sin(v)),
                        np.outer(np.ones_like(u), np.cos(v)),
                        color="0.8", linewidth=0.4)
    x, y, z = result.vectors.T
    ax3d.plot(x, y, z, color="tab:blue", linewidth=1.5)
    ax3d.scatter(*result.vectors[0], color="tab:green", label="start")
    ax3d.scatter(*result.vectors[-1], color="tab:red", label="end")
    ax3d.set_xlabel("x")
    ax3d.set_ylabel("y")
    ax3d.set_zlabel("z")
    ax3d.set_box_aspect((1, 1, 1))
    ax3d.legend(loc="upper left", fontsize=8)

    ax = fig.add_subplot(1, 2, 2)
    ax.plot(result.times, result.norms, label="|u|")
    ax.plot(result.times, result.purities, label="purity", linestyle="--")
    ax.set_xlabel("t")
    ax.set_ylim(0, 1.05)
    ax.legend()
    ax.set_title(f"final |u| = {result.final_norm:.4f}")
    fig.suptitle("Bloch trajectory")
    fig.tight_layout()
    return fig


def _sweep_figure(result: SweepResult):
    fig, (ax_f, ax_s) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
    ax_f.plot(result.rates, result.fidelity, marker="o", markersize=3)
    ax_f.set_ylabel("fidelity")
    ax_f.set_ylim(0, 1.05)
    ax_s.plot(result.rates, result.entropy, marker="o", markersize=3,
              label="entropy")
    if result.concurrence is not None:
        ax_s.plot(result.rates, result.concurrence, marker="s", markersize=3,
                  label="concurrence")
    if result.bloch_norm is not None:
        ax_s.plot(result.rates, result.bloch_norm, marker="s", markersize=3,
                  label="|u|")
    ax_s.set_xlabel(result.channel)
    ax_s.legend()
    if result.spacing == "log":
        ax_s.set_xscale("log")
    fig.suptitle(result.scenario)
    fig.tight_layout()
    return fig


def _map_figure(result: MapResult):
    fig, ax = plt.subplots(figsize=(6, 5))
    mesh = ax.pcolormesh(result.gamma_d, result.gamma_r, result.grid.T,
                         shading="auto", vmin=0, vmax=1, cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="concurrence")
    if result.grid.min() < CONTOUR_LEVEL < result.grid.max():
        ax.contour(result.gamma_d, result.gamma_r, result.grid.T,
                   levels=[CONTOUR_LEVEL], colors="white", linestyles="dashed")
    ax.set_xlabel("gamma_d")
    ax.set_ylabel("gamma_r")
    ax.set_title("concurrence map")
    fig.tight_layout()
    return fig


def _gate_figure(result: GateTableResult):
    fig, ax = plt.subplots(figsize=(6, 4))
    names = [e["name"] for e in result.entries]
    devs = [max(e["max_abs_deviation"], 1e-17) for e in result.entries]
    ax.barh(names, devs, color="tab:blue")
    ax.set_xscale("log")
    ax.set_xlabel("max |deviation| vs golden matrix")
    ax.invert_yaxis()
    fig.tight_layout()
    return fig
