"""Sweep driver over the (theta, T) plane, producing deterministic CSV rows.

For each theta column the two bands (at theta and theta + dtheta) are built
once and reused for every temperature row; per-point failures are recorded as
NaN rows rather than aborting the sweep. Row order is row-major with theta
outermost, and all accumulation orders are fixed, so repeated runs of the same
configuration produce byte-identical output.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .bloch import SymmetryClass, WalkParameters, band_structure, gap_diagnostics
from .gibbs import (
    LOW_T_THRESHOLD,
    GibbsFamily,
    fidelity_and_delta_over_temperatures,
)

PRECISION_STANDARD = "standard"
PRECISION_EXTENDED = "extended-low-t"

CSV_HEADER = "theta,T,F,Delta,gap0,gapPi,degenerate_count"


@dataclass(frozen=True)
class SweepConfig:
    """Rectangular (theta, T) grid, a displacement, and a state family."""

    symmetry_class: SymmetryClass
    family: GibbsFamily
    theta_min: float = -math.pi
    theta_max: float = math.pi
    theta_step: float = 0.01
    T_min: float = 0.01
    T_max: float = 1.0
    T_step: float = 0.01
    dtheta: float = 0.01
    dT: float = 0.01
    n_k: int = 512
    precision: str = PRECISION_STANDARD

    def __post_init__(self) -> None:
        if self.theta_step <= 0 or self.T_step <= 0:
            raise ValueError("grid steps must be positive")
        if self.theta_max < self.theta_min or self.T_max < self.T_min:
            raise ValueError("grid ranges must be non-empty")
        if not self.T_min > 0:
            raise ValueError("T_min must be strictly positive")
        if self.dtheta < 0 or self.dT < 0:
            raise ValueError("displacement components must be non-negative")
        if self.dtheta == 0 and self.dT == 0:
            raise ValueError("displacement must not be zero in both components")
        if self.precision not in (PRECISION_STANDARD, PRECISION_EXTENDED):
            raise ValueError(f"unknown precision {self.precision!r}")

    def theta_grid(self) -> np.ndarray:
        count = int(math.floor((self.theta_max - self.theta_min) / self.theta_step + 1e-9)) + 1
        return self.theta_min + self.theta_step * np.arange(count)

    def temperature_grid(self) -> np.ndarray:
        count = int(math.floor((self.T_max - self.T_min) / self.T_step + 1e-9)) + 1
        return self.T_min + self.T_step * np.arange(count)

    @property
    def effective_extended(self) -> bool:
        # Low-T instability guard: points below the threshold force the
        # compensated-accumulation path for the whole sweep.
        return self.precision == PRECISION_EXTENDED or self.T_min < LOW_T_THRESHOLD


@dataclass(frozen=True)
class SweepRecord:
    theta: float
    T: float
    F: float
    Delta: float
    gap0: float
    gap_pi: float
    degenerate_count: int


@dataclass
class SweepStats:
    """Instrumentation for the band-reuse performance contract."""

    band_builds: int = 0
    columns: int = 0


class _BandCache:
    """Small read-only-after-insert cache of bands keyed by theta."""

    def __init__(self, symmetry_class: SymmetryClass, n_k: int, maxsize: int = 8):
        self._cls = symmetry_class
        self._n_k = n_k
        self._maxsize = maxsize
        self._store: dict[float, object] = {}
        self.builds = 0

    def get(self, theta: float):
        band = self._store.get(theta)
        if band is None:
            band = band_structure(WalkParameters.for_class(self._cls, theta), self._n_k)
            if len(self._store) >= self._maxsize:
                self._store.pop(next(iter(self._store)))
            self._store[theta] = band
            self.builds += 1
        return band


def run_sweep(
    config: SweepConfig,
    *,
    progress: bool = False,
    stats: SweepStats | None = None,
) -> list[SweepRecord]:
    """Evaluate (F, Delta) on the full grid, row-major with theta outermost."""
    thetas = config.theta_grid()
    temps = config.temperature_grid()
    temps_shifted = temps + config.dT
    extended = config.effective_extended
    cache = _BandCache(config.symmetry_class, config.n_k)
    records: list[SweepRecord] = []
    for j, theta in enumerate(thetas):
        band = cache.get(float(theta))
        band_shifted = cache.get(float(theta) + config.dtheta)
        gaps = gap_diagnostics(band)
        degenerate_count = int(band.degenerate.sum())
        try:
            fid, dlt = fidelity_and_delta_over_temperatures(
                band, band_shifted, temps, temps_shifted, config.family, extended=extended
            )
        except (ArithmeticError, np.linalg.LinAlgError):
            fid = np.full(temps.size, np.nan)
            dlt = np.full(temps.size, np.nan)
        for T, f, d in zip(temps, fid, dlt):
            records.append(
                SweepRecord(
                    float(theta), float(T), float(f), float(d),
                    gaps.gap0, gaps.gap_pi, degenerate_count,
                )
            )
        if progress:
            print(
                f"theta column {j + 1}/{thetas.size} (theta = {theta:.6g})",
                file=sys.stderr,
            )
    if stats is not None:
        stats.band_builds = cache.builds
        stats.columns = int(thetas.size)
    return records


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def write_csv(records: list[SweepRecord], path) -> None:
    """Serialize records with 12 significant digits; NaN rows stay in place."""
    if not records:
        raise ValueError("refusing to write an empty sweep")
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    _fmt(r.theta), _fmt(r.T), _fmt(r.F), _fmt(r.Delta),
                    _fmt(r.gap0), _fmt(r.gap_pi), str(r.degenerate_count),
                )
            )
        )
    data = "\n".join(lines) + "\n"
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"failed to write sweep CSV to {path}: {exc}") from exc
