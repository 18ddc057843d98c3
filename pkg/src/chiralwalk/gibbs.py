"""Thermal-state families over a quasienergy band, with closed-form fidelity.

Four Boltzmann-Gibbs state families are supported, enumerated by
:class:`GibbsFamily`: two single-particle states (a global thermal state over
all momenta, and a per-momentum-normalized mixture) and their two many-body
free-fermion counterparts (canonical, and generalized with per-momentum
chemical potentials). For all four, the fidelity F(rho, rho') and the
eigenbasis-sensitivity Delta = F - Tr(sqrt(rho) sqrt(rho')) between two
parameter points reduce to per-momentum scalar cores combined by sums or
products over the Brillouin zone.

The per-momentum reduced variable is u_k = E_k / (2T); the unnormalized
per-momentum state is exp(-u_k n_k.sigma) with partition function
Z_k = 2 cosh(u_k). The two scalar cores are

    G = sqrt(2 + (1+d) cosh(u+u') + (1-d) cosh(u-u'))   d = n_k . n'_k
    S = (1+d) cosh((u+u')/2) + (1-d) cosh((u-u')/2)

with G = Tr sqrt(sqrt(p) p' sqrt(p)) and S = Tr(sqrt(p) sqrt(p')) for the
unnormalized 2x2 states. All aggregations run in log space so that T -> 0
sweeps stay finite; accumulation order is fixed, so results are bit-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bloch import BlochBand
from .errors import DomainError, IllDefinedLimitError

LOG2 = math.log(2.0)

#: Sweeps below this temperature require the extended-accumulation path.
LOW_T_THRESHOLD = 0.003


class GibbsFamily(Enum):
    """State family selecting one closed-form fidelity/Delta set.

    SP0: single-particle thermal state, one global normalization over k.
    SP1: single-particle mixture normalized per momentum.
    MB0: many-body canonical ensemble of the free-fermion chain.
    MB1: many-body generalized ensemble with per-momentum chemical potentials.
    """

    SP0 = "sp0"
    SP1 = "sp1"
    MB0 = "mb0"
    MB1 = "mb1"

    @property
    def many_body(self) -> bool:
        return self in (GibbsFamily.MB0, GibbsFamily.MB1)


@dataclass(frozen=True)
class ThermalPoint:
    """A band together with a strictly positive temperature (k_B = 1)."""

    band: BlochBand
    T: float

    def __post_init__(self) -> None:
        if not self.T > 0.0:
            raise DomainError(f"temperature must be strictly positive, got {self.T!r}")

    @property
    def beta(self) -> float:
        return 1.0 / self.T


@dataclass(frozen=True)
class PerKCore:
    """Per-momentum scalar cores for a pair of thermal points (linear scale).

    Linear-scale values overflow for extreme u; the fidelity/Delta operations
    use the log-space forms internally and never build these.
    """

    u: np.ndarray
    u_prime: np.ndarray
    ndot: np.ndarray
    G: np.ndarray
    S: np.ndarray
    Z: np.ndarray
    Z_prime: np.ndarray


def _validate_ndot(ndot):
    d = np.asarray(ndot, dtype=float)
    if (np.abs(d) > 1.0 + 1e-12).any():
        raise ValueError(f"ndot must lie in [-1, 1] (within 1e-12), got {ndot!r}")
    return np.clip(d, -1.0, 1.0)


def cross_term(u, u_prime, ndot):
    """G = Tr sqrt(sqrt(p) p' sqrt(p)) for unnormalized states exp(-u n.sigma).

    Symmetric in (u, u'); equals Z = 2 cosh(u) when u = u' and ndot = 1.
    Computed in log space once u + u' > 300 to delay overflow.
    """
    d = _validate_ndot(ndot)
    u = np.asarray(u, dtype=float)
    up = np.asarray(u_prime, dtype=float)
    s, dl = u + up, u - up
    if np.all(s <= 300.0):
        val = np.sqrt(2.0 + (1.0 + d) * np.cosh(s) + (1.0 - d) * np.cosh(dl))
    else:
        with np.errstate(over="ignore"):
            val = np.exp(
                0.5 * _lse3(LOG2, _log1p_quiet(d) + _logcosh(s), _log1p_quiet(-d) + _logcosh(dl))
            )
    return val if val.ndim else float(val)


def sqrt_cross_term(u, u_prime, ndot):
    """S = Tr(sqrt(p) sqrt(p')) for unnormalized states exp(-u n.sigma).

    Satisfies 0 <= S <= G (the trace inequality behind Delta >= 0).
    """
    d = _validate_ndot(ndot)
    u = np.asarray(u, dtype=float)
    up = np.asarray(u_prime, dtype=float)
    s, dl = u + up, u - up
    if np.all(s <= 300.0):
        val = (1.0 + d) * np.cosh(0.5 * s) + (1.0 - d) * np.cosh(0.5 * dl)
    else:
        with np.errstate(over="ignore"):
            val = np.exp(
                _lse2(_log1p_quiet(d) + _logcosh(0.5 * s), _log1p_quiet(-d) + _logcosh(0.5 * dl))
            )
    return val if val.ndim else float(val)


# --------------------------------------------------------------------------
# log-space primitives
# --------------------------------------------------------------------------


def _logcosh(x):
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - LOG2


def _log1p_quiet(x):
    with np.errstate(divide="ignore"):
        return np.log1p(x)


def _lse2(a, b):
    m = np.maximum(a, b)
    with np.errstate(invalid="ignore"):
        out = m + np.log(np.exp(a - m) + np.exp(b - m))
    return np.where(np.isneginf(m), -np.inf, out)


def _lse3(a, b, c):
    a, b, c = np.broadcast_arrays(a, b, c)
    m = np.maximum(np.maximum(a, b), c)
    return m + np.log(np.exp(a - m) + np.exp(b - m) + np.exp(c - m))


def effective_bloch_vectors(band: BlochBand) -> tuple[np.ndarray, np.ndarray]:
    """Bloch vectors with degenerate samples resolved, plus the kill mask.

    Samples degenerate near E = 0 keep a placeholder vector and are flagged in
    the mask: their ndot contribution is weighted by sinh(u) ~ 0 and is dropped
    from the closed forms. Samples degenerate near E = pi take the vector of
    the nearest non-degenerate grid neighbor (directional limit along k).
    """
    n_eff = band.bloch_vectors.copy()
    kill = np.zeros(band.n_k, dtype=bool)
    if not band.degenerate.any():
        return n_eff, kill
    good = ~band.degenerate
    size = band.n_k
    for j in np.nonzero(band.degenerate)[0]:
        if band.energy[j] < math.pi / 2:
            n_eff[j] = (0.0, 0.0, 1.0)
            kill[j] = True
            continue
        for step in range(1, size):
            for cand in ((j - step) % size, (j + step) % size):
                if good[cand]:
                    n_eff[j] = n_eff[cand]
                    break
            else:
                continue
            break
        else:
            raise IllDefinedLimitError(
                "every sample is degenerate near E = pi; the state is ill-defined"
            )
    return n_eff, kill


def per_k_cores(point: ThermalPoint, point_prime: ThermalPoint) -> PerKCore:
    """Linear-scale per-momentum cores for a pair of thermal points."""
    _check_grids(point, point_prime)
    d = _pair_ndot(point.band, point_prime.band)
    u = point.band.energy / (2.0 * point.T)
    up = point_prime.band.energy / (2.0 * point_prime.T)
    return PerKCore(
        u=u,
        u_prime=up,
        ndot=d,
        G=np.asarray(cross_term(u, up, d)),
        S=np.asarray(sqrt_cross_term(u, up, d)),
        Z=2.0 * np.cosh(u),
        Z_prime=2.0 * np.cosh(up),
    )


def _check_grids(point: ThermalPoint, point_prime: ThermalPoint) -> None:
    if point.band.n_k != point_prime.band.n_k or not np.array_equal(
        point.band.k, point_prime.band.k
    ):
        raise ValueError("the two thermal points must share an identical k-grid")


def _pair_ndot(band: BlochBand, band_prime: BlochBand) -> np.ndarray:
    n1, kill1 = effective_bloch_vectors(band)
    n2, kill2 = effective_bloch_vectors(band_prime)
    d = np.einsum("kj,kj->k", n1, n2)
    d = np.clip(d, -1.0, 1.0)
    # Snap near-(anti)parallel pairs to exactly +-1: keeps self-comparisons
    # bit-exact and perturbs genuine pairs by less than 1e-13.
    near = np.abs(d) > 1.0 - 1e-13
    d[near] = np.copysign(1.0, d[near])
    d[kill1 | kill2] = 0.0
    return d


def _log_cores(energy, energy_prime, ndot, T, T_prime):
    """Stable per-momentum log quantities for the family reductions.

    Returns (logZ, logZ', log_g, log_q) where g = G / sqrt(Z Z') and
    q = S / sqrt(Z Z') are the normalized per-momentum cores. Temperatures may
    be scalars or column vectors broadcasting against the momentum axis. The
    forms are arranged so that for identical inputs log_g and log_q are
    bitwise zero, making self-fidelity exactly 1 and self-Delta exactly 0.
    """
    u = energy / (2.0 * np.asarray(T))
    up = energy_prime / (2.0 * np.asarray(T_prime))
    s, dl = u + up, u - up
    lcs, lcd = _logcosh(s), _logcosh(dl)
    lp, lm = _log1p_quiet(ndot), _log1p_quiet(-ndot)
    log_zz = _lse3(-np.inf, LOG2 + lcs, LOG2 + lcd)  # log(Z Z')
    log_g = 0.5 * (_lse3(LOG2, lp + lcs, lm + lcd) - log_zz)
    log_z = LOG2 + _logcosh(u)
    log_zp = LOG2 + _logcosh(up)
    log_q = _lse3(-np.inf, lp + _logcosh(0.5 * s), lm + _logcosh(0.5 * dl)) - 0.5 * (
        log_z + log_zp
    )
    return log_z, log_zp, log_g, log_q


def _axis_sum(x, extended: bool):
    if not extended:
        return np.sum(x, axis=-1)
    if x.ndim == 1:
        return math.fsum(x.tolist())
    return np.array([math.fsum(row.tolist()) for row in x])


def _axis_lse(x, extended: bool):
    m = np.max(x, axis=-1, keepdims=True)
    return np.squeeze(m, -1) + np.log(_axis_sum(np.exp(x - m), extended))


def _reduce_family(family, log_z, log_zp, log_g, log_q, extended=False):
    """Aggregate per-momentum cores into (F, Tr sqrt(rho) sqrt(rho'))."""
    n_k = log_g.shape[-1]
    if family is GibbsFamily.SP0:
        norm = 0.5 * (_axis_lse(log_z, extended) + _axis_lse(log_zp, extended))
        half = 0.5 * (log_z + log_zp)
        fid = np.exp(_axis_lse(log_g + half, extended) - norm)
        tr = np.exp(_axis_lse(log_q + half, extended) - norm)
    elif family is GibbsFamily.SP1:
        fid = _axis_sum(np.exp(log_g), extended) / n_k
        tr = _axis_sum(np.exp(log_q), extended) / n_k
    elif family is GibbsFamily.MB0:
        half = 0.5 * (log_z + log_zp)
        den = 0.5 * (_lse2(LOG2, log_z) + _lse2(LOG2, log_zp))
        fid = np.exp(_axis_sum(_lse2(LOG2, log_g + half) - den, extended))
        tr = np.exp(_axis_sum(_lse2(LOG2, log_q + half) - den, extended))
    elif family is GibbsFamily.MB1:
        b = np.exp(-(log_z + log_zp))
        den = 0.5 * (_lse2(LOG2, -2.0 * log_z) + _lse2(LOG2, -2.0 * log_zp))
        fid = np.exp(_axis_sum(np.log1p(np.exp(log_g) + b) - den, extended))
        tr = np.exp(_axis_sum(np.log1p(np.exp(log_q) + b) - den, extended))
    else:
        raise ValueError(f"unknown family {family!r}")
    return fid, tr


def _point_pair_stats(point, point_prime, family, extended):
    _check_grids(point, point_prime)
    d = _pair_ndot(point.band, point_prime.band)
    cores = _log_cores(
        point.band.energy, point_prime.band.energy, d, point.T, point_prime.T
    )
    fid, tr = _reduce_family(family, *cores, extended=extended)
    return float(fid), float(tr)


def fidelity(
    point: ThermalPoint,
    point_prime: ThermalPoint,
    family: GibbsFamily,
    *,
    extended: bool = False,
) -> float:
    """Closed-form fidelity F(rho, rho') in [0, 1] for the chosen family."""
    fid, _ = _point_pair_stats(point, point_prime, family, extended)
    return fid


def delta(
    point: ThermalPoint,
    point_prime: ThermalPoint,
    family: GibbsFamily,
    *,
    extended: bool = False,
) -> float:
    """Departure of the Uhlmann factor from identity: F - Tr(sqrt(rho) sqrt(rho')).

    Zero (within accumulation noise) whenever the two points share every
    Bloch vector, e.g. for pure-temperature displacements.
    """
    fid, tr = _point_pair_stats(point, point_prime, family, extended)
    return fid - tr


def fidelity_and_delta_over_temperatures(
    band: BlochBand,
    band_prime: BlochBand,
    T: np.ndarray,
    T_prime: np.ndarray,
    family: GibbsFamily,
    *,
    extended: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (F, Delta) for one band pair across many temperature rows.

    Used by the sweep driver: the band pair is fixed per sweep column while
    the temperature varies row by row.
    """
    if band.n_k != band_prime.n_k or not np.array_equal(band.k, band_prime.k):
        raise ValueError("the two bands must share an identical k-grid")
    T = np.asarray(T, dtype=float)
    Tp = np.asarray(T_prime, dtype=float)
    if (T <= 0).any() or (Tp <= 0).any():
        raise DomainError("temperatures must be strictly positive")
    d = _pair_ndot(band, band_prime)
    cores = _log_cores(band.energy, band_prime.energy, d, T[:, None], Tp[:, None])
    fid, tr = _reduce_family(family, *cores, extended=extended)
    return fid, fid - tr


@dataclass(frozen=True)
class ZeroTemperatureState:
    """Support and weights of the T -> 0 limit of a single-particle family.

    The state is the uniform mixture of |-n_k> x |k> over ``support`` (grid
    indices); ``weights`` are the uniform probabilities.
    """

    family: GibbsFamily
    support: np.ndarray
    k_values: np.ndarray
    weights: np.ndarray


def zero_T_limit(
    band: BlochBand, family: GibbsFamily, tol: float = 1e-6
) -> ZeroTemperatureState:
    """T -> 0 limit of the SP0 or SP1 family as a support set plus weights.

    SP0 concentrates on the momenta maximizing E_k (the lowest modes of the
    lower band); SP1 mixes the entire lower band uniformly. Samples degenerate
    near E = pi on the support take the directional-limit Bloch vector, as in
    the fidelity formulas; samples degenerate near E = 0 have no pure-state
    limit and make the operation fail.
    """
    if family is GibbsFamily.SP0:
        support = np.nonzero(band.energy >= band.energy.max() - tol)[0]
    elif family is GibbsFamily.SP1:
        if band.degenerate.any():
            raise IllDefinedLimitError(
                "SP1 zero-temperature limit requires a gapped band"
            )
        support = np.arange(band.n_k)
    else:
        raise ValueError("zero_T_limit is defined for the single-particle families only")
    _, kill = effective_bloch_vectors(band)
    if kill[support].any():
        raise IllDefinedLimitError(
            "Bloch vector is ill-defined on the zero-temperature support"
        )
    weights = np.full(support.size, 1.0 / support.size)
    return ZeroTemperatureState(family, support, band.k[support], weights)
