"""Figure rendering for sweep heatmaps, edge-state curves, and band plots.

All rendering is headless (Agg backend) and read-only over the input CSVs;
each renderer returns the binned data it drew so tests can verify figure
content numerically instead of by eye.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import EdgeBlock, SweepTable, read_band, read_edge_blocks, read_sweep

#: NaN sweep rows are drawn in this hole color, distinct from every colormap end.
HOLE_COLOR = "#ff00ff"


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: input CSV, figure kind, labels, output path, color bounds."""

    input_path: str
    kind: str  # heatmap | edge-lines | band
    output_path: str
    value_column: str = "F"
    xlabel: str | None = None
    ylabel: str | None = None
    title: str | None = None
    color_bounds: tuple[float, float] | None = None
    figsize: tuple[float, float] = (7.0, 4.5)
    dpi: int = 150

    def __post_init__(self) -> None:
        if self.kind not in ("heatmap", "edge-lines", "band"):
            raise ValueError(f"unknown figure kind {self.kind!r}")


def render(spec: FigureSpec):
    if spec.kind == "heatmap":
        return render_heatmap(spec)
    if spec.kind == "edge-lines":
        return render_edge_lines(spec)
    return render_band(spec)


def render_heatmap(spec: FigureSpec) -> SweepTable:
    """Draw one sweep column over the (theta, T) lattice; returns the table.

    The pixel grid matches the lattice exactly (one cell per grid point);
    NaN cells are painted in a distinct hole color and the color scale is
    annotated with the column name.
    """
    table = read_sweep(spec.input_path)
    if spec.value_column not in table.columns:
        raise ValueError(
            f"value column {spec.value_column!r} not in sweep schema "
            f"{sorted(table.columns)}"
        )
    values = table.grid(spec.value_column).T  # rows = T for a conventional y-axis
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad(HOLE_COLOR)
    vmin, vmax = spec.color_bounds if spec.color_bounds else (None, None)
    fig, ax = plt.subplots(figsize=spec.figsize)
    mesh = ax.pcolormesh(
        _cell_edges(table.theta_values),
        _cell_edges(table.T_values),
        np.ma.masked_invalid(values),
        cmap=cmap,
        vmin=vmin,
        vmax=vmax,
        shading="flat",
    )
    fig.colorbar(mesh, ax=ax, label=spec.value_column)
    ax.set_xlabel(spec.xlabel or "theta")
    ax.set_ylabel(spec.ylabel or "T")
    if spec.title:
        ax.set_title(spec.title)
    fig.savefig(spec.output_path, dpi=spec.dpi)
    plt.close(fig)
    return table


def render_edge_lines(spec: FigureSpec) -> list[EdgeBlock]:
    """Draw one site-distribution curve per temperature block."""
    blocks = read_edge_blocks(spec.input_path)
    fig, ax = plt.subplots(figsize=spec.figsize)
    for block in blocks:
        ax.plot(block.sites, block.probabilities, label=f"T = {block.temperature:g}")
    ax.set_xlabel(spec.xlabel or "site")
    ax.set_ylabel(spec.ylabel or "p(x)")
    if spec.title:
        ax.set_title(spec.title)
    ax.legend()
    fig.savefig(spec.output_path, dpi=spec.dpi)
    plt.close(fig)
    return blocks


def render_band(spec: FigureSpec):
    """Draw the two quasienergy bands +-E_k over the Brillouin zone."""
    band = read_band(spec.input_path)
    fig, ax = plt.subplots(figsize=spec.figsize)
    ax.plot(band.k, band.energy, ".", ms=3, color="tab:blue")
    ax.plot(band.k, -band.energy, ".", ms=3, color="tab:orange")
    ax.set_xlabel(spec.xlabel or "k")
    ax.set_ylabel(spec.ylabel or "E")
    if spec.title:
        ax.set_title(spec.title)
    fig.savefig(spec.output_path, dpi=spec.dpi)
    plt.close(fig)
    return band


def _cell_edges(centers: np.ndarray) -> np.ndarray:
    """Cell boundaries for pcolormesh so each grid point owns one pixel cell."""
    centers = np.asarray(centers, dtype=float)
    if centers.size == 1:
        half = 0.5 if centers[0] == 0 else 0.5 * abs(centers[0])
        return np.array([centers[0] - half, centers[0] + half])
    mid = 0.5 * (centers[1:] + centers[:-1])
    first = centers[0] - (mid[0] - centers[0])
    last = centers[-1] + (centers[-1] - mid[-1])
    return np.concatenate([[first], mid, [last]])
