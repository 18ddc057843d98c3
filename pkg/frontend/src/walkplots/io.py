"""Readers for the chiralwalk CSV schemas.

Three file kinds are understood: sweep tables (theta, T, F, Delta, gaps,
degeneracy count), edge-distribution files (blank-line separated blocks of
(x, p) rows, one block per temperature), and band tables (k, E, Bloch vector,
degeneracy flag). Headers must match the producing schemas exactly; unknown
columns are rejected rather than ignored.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

SWEEP_COLUMNS = ["theta", "T", "F", "Delta", "gap0", "gapPi", "degenerate_count"]
BAND_COLUMNS = ["k", "E", "n_x", "n_y", "n_z", "degenerate"]
EDGE_COLUMNS = ["x", "p"]


class SchemaError(ValueError):
    """Input file does not conform to a chiralwalk CSV schema."""


@dataclass(frozen=True)
class SweepTable:
    """Sweep rows pivoted onto the full rectangular (theta, T) lattice."""

    theta_values: np.ndarray
    T_values: np.ndarray
    columns: dict[str, np.ndarray]  # each (n_theta, n_T)

    def grid(self, column: str) -> np.ndarray:
        return self.columns[column]


@dataclass(frozen=True)
class EdgeBlock:
    temperature: float
    sites: np.ndarray
    probabilities: np.ndarray


@dataclass(frozen=True)
class BandTable:
    k: np.ndarray
    energy: np.ndarray
    bloch_vectors: np.ndarray
    degenerate: np.ndarray


def _check_header(got: list[str], want: list[str], path) -> None:
    if got != want:
        raise SchemaError(
            f"{path}: header {got!r} does not match the expected schema {want!r}"
        )


def read_sweep(path) -> SweepTable:
    """Load a sweep CSV and pivot it; fail if the (theta, T) grid is ragged."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise SchemaError(f"{path}: empty file")
        _check_header(header, SWEEP_COLUMNS, path)
        rows = [[float(cell) for cell in row] for row in reader if row]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    data = np.array(rows)
    theta_values = np.unique(data[:, 0])
    T_values = np.unique(data[:, 1])
    index = {}
    for row in data:
        index[(row[0], row[1])] = row
    missing = [
        (theta, T)
        for theta in theta_values
        for T in T_values
        if (theta, T) not in index
    ]
    if missing:
        shown = ", ".join(f"(theta={a:.6g}, T={b:.6g})" for a, b in missing[:10])
        more = "" if len(missing) <= 10 else f" and {len(missing) - 10} more"
        raise SchemaError(f"{path}: ragged grid, missing points {shown}{more}")
    if len(rows) != theta_values.size * T_values.size:
        raise SchemaError(f"{path}: duplicated grid points")
    columns = {}
    for col, name in enumerate(SWEEP_COLUMNS[2:], start=2):
        grid = np.empty((theta_values.size, T_values.size))
        for i, theta in enumerate(theta_values):
            for j, T in enumerate(T_values):
                grid[i, j] = index[(theta, T)][col]
        columns[name] = grid
    return SweepTable(theta_values, T_values, columns)


def read_edge_blocks(path) -> list[EdgeBlock]:
    """Load the blank-line separated temperature blocks of an edge CSV."""
    with open(path, "r", encoding="utf-8") as fh:
        chunks = fh.read().split("\n\n")
    blocks = []
    for chunk in chunks:
        lines = [line for line in chunk.splitlines() if line]
        if not lines:
            continue
        if not lines[0].startswith("# T = "):
            raise SchemaError(f"{path}: block does not start with a '# T = ...' line")
        temperature = float(lines[0][len("# T = "):])
        if len(lines) < 3:
            raise SchemaError(f"{path}: block for T = {temperature} has no data rows")
        _check_header(lines[1].split(","), EDGE_COLUMNS, path)
        sites, probs = [], []
        for line in lines[2:]:
            x, p = line.split(",")
            sites.append(int(x))
            probs.append(float(p))
        blocks.append(EdgeBlock(temperature, np.array(sites), np.array(probs)))
    if not blocks:
        raise SchemaError(f"{path}: no temperature blocks found")
    return blocks


def read_band(path) -> BandTable:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise SchemaError(f"{path}: empty file")
        _check_header(header, BAND_COLUMNS, path)
        rows = [[float(cell) for cell in row] for row in reader if row]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    data = np.array(rows)
    return BandTable(data[:, 0], data[:, 1], data[:, 2:5], data[:, 5].astype(bool))
