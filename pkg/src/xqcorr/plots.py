"""Figure rendering for the sweep and trajectory datasets.

Purely cosmetic companions to the CSV files: every plot is drawn from an
emitted dataset, never from live state, so the figures can always be
regenerated from the delimited output alone.  Uses the Agg backend and
writes PNGs.
"""

from __future__ import annotations

import io
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import LOWER_A, bound_curves
from .measures import _f_q

# scatter panels subsample beyond this many points (deterministic stride);
# the CSVs keep everything
MAX_POINTS = 200_000

_DPI = 150


def _parse(text: str, usecols=None) -> np.ndarray:
    data = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1, usecols=usecols, ndmin=2)
    return data


def _thin(arr: np.ndarray) -> np.ndarray:
    if arr.shape[0] <= MAX_POINTS:
        return arr
    stride = int(np.ceil(arr.shape[0] / MAX_POINTS))
    return arr[::stride]


def _panel(ax, xy: np.ndarray, xlabel: str, ylabel: str) -> None:
    xy = _thin(xy)
    ax.scatter(xy[:, 0], xy[:, 1], s=1.5, alpha=0.35, linewidths=0, color="#14507a")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(alpha=0.25, linewidth=0.5)


def _diagonal(ax) -> None:
    lim = max(ax.get_xlim()[1], ax.get_ylim()[1], 1e-9)
    ax.plot([0.0, lim], [0.0, lim], "--", color="0.35", linewidth=1.0)


def _save(fig, outdir: str, name: str, paths: list[str]) -> None:
    path = os.path.join(outdir, f"{name}.png")
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    paths.append(path)


def render_hierarchy(
    datasets: dict[str, str], outdir: str, q: float | None = None
) -> list[str]:
    """PNG per fig1 panel: measure-vs-measure scatter plus reference lines.

    Panel (a) carries the transfer-function lower bound, drawn at the
    fixed q when one was used and at q = 4 (the lowest curve of the
    family on [1, 4]) when q was randomized.
    """
    os.makedirs(outdir, exist_ok=True)
    paths: list[str] = []
    family = bound_curves(LOWER_A, 512)

    for name, (xm, ym) in (
        ("fig1a", ("E", "Dq")),
        ("fig1b", ("N", "E")),
        ("fig1c", ("S2e", "N")),
        ("fig1d", ("S2e", "S3e")),
        ("fig1e", ("S3e", "E")),
        ("fig1f", ("S3e", "N")),
    ):
        fig, ax = plt.subplots(figsize=(4.2, 4.0))
        _panel(ax, _parse(datasets[name]), xm, ym)
        if name == "fig1a":
            qq = 4.0 if q is None else q
            xs = np.linspace(0.0, 1.0, 512)
            ax.plot(xs, [_f_q(x, qq) for x in xs], color="#b03a2e", linewidth=1.2)
        elif name in ("fig1b", "fig1d"):
            _diagonal(ax)
        else:
            # the (u, u, -1) family traces the lower edge of these panels
            ax.plot(family[xm], family[ym], color="#b03a2e", linewidth=1.2)
        fig.tight_layout()
        _save(fig, outdir, name, paths)
    return paths


def render_invariance(datasets: dict[str, str], outdir: str) -> list[str]:
    """PNGs for the rotated-vs-original panels fig2a, fig2b, fig2c."""
    os.makedirs(outdir, exist_ok=True)
    paths: list[str] = []

    fig, ax = plt.subplots(figsize=(4.2, 4.0))
    _panel(ax, _parse(datasets["fig2a"], usecols=(1, 2)), "M", "M after rotation")
    _diagonal(ax)
    fig.tight_layout()
    _save(fig, outdir, "fig2a", paths)

    for name, label in (("fig2b", "S2v"), ("fig2c", "S3v")):
        fig, ax = plt.subplots(figsize=(4.2, 4.0))
        _panel(ax, _parse(datasets[name]), label, f"{label} after rotation")
        _diagonal(ax)
        fig.tight_layout()
        _save(fig, outdir, name, paths)
    return paths


def render_sudden_death(datasets: dict[str, str], outdir: str) -> list[str]:
    """PNGs for the pairwise death-time panels fig3a..fig3d."""
    os.makedirs(outdir, exist_ok=True)
    paths: list[str] = []
    for name in ("fig3a", "fig3b", "fig3c", "fig3d"):
        header = datasets[name].split("\n", 1)[0]
        xm, ym = header.split(",")
        fig, ax = plt.subplots(figsize=(4.2, 4.0))
        xy = _parse(datasets[name])
        if xy.size:
            _panel(ax, xy, xm, ym)
        else:
            ax.set_xlabel(xm)
            ax.set_ylabel(ym)
        _diagonal(ax)
        fig.tight_layout()
        _save(fig, outdir, name, paths)
    return paths


def render_trajectory(csv_text: str, outdir: str) -> list[str]:
    """Line plot of every measure along an evolve trajectory."""
    os.makedirs(outdir, exist_ok=True)
    header = csv_text.split("\n", 1)[0].split(",")
    data = _parse(csv_text)
    t = data[:, 0]
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    for col in range(5, data.shape[1]):
        ax.plot(t, data[:, col], linewidth=1.3, label=header[col])
    ax.set_xlabel("t")
    ax.set_ylabel("measure")
    ax.grid(alpha=0.25, linewidth=0.5)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    paths: list[str] = []
    _save(fig, outdir, "trajectory", paths)
    return paths
