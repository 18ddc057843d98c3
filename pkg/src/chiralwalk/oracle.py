"""Dense-matrix reference implementations of the fidelity quantities.

These routines build the actual density-matrix square roots (block-diagonal
over momenta for the single-particle families, per-momentum 4-dimensional Fock
blocks for the many-body ones) and evaluate F = Tr sqrt(sqrt(rho) rho'
sqrt(rho)) as the nuclear norm of sqrt(rho) sqrt(rho'), and
Tr(sqrt(rho) sqrt(rho')) as a plain trace. They share no code with the closed
forms in :mod:`chiralwalk.gibbs` beyond the state definition (effective Bloch
vectors of a band), so agreement between the two routes validates every
closed-form expression.

Occupations are filled through the logistic function of the reduced variable
u = E/(2T) and square roots are taken on the occupations themselves, which
keeps the construction accurate at any temperature: singular values of the
product then carry only absolute rounding error, never sqrt-amplified error.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import block_diag
from scipy.special import expit

from .bloch import PAULI
from .gibbs import GibbsFamily, ThermalPoint, effective_bloch_vectors

#: Default dense-dimension cap: bands larger than this are refused.
DEFAULT_MAX_NK = 16


def _nuclear_norm(m: np.ndarray) -> float:
    return float(np.linalg.svd(m, compute_uv=False).sum())


def _qubit_root(u: float, n: np.ndarray) -> np.ndarray:
    """Square root of exp(-u n.sigma) / (2 cosh u), by eigendecomposition.

    The occupations expit(-2 u w) of the two eigenmodes w = +-1 are computed
    directly, so the result is relative-accurate even for near-pure states.
    """
    h = np.einsum("j,jab->ab", n, PAULI)
    vals, vecs = np.linalg.eigh(h)
    occ = expit(-2.0 * u * vals)
    return (vecs * np.sqrt(occ)) @ vecs.conj().T


def _single_particle_root(point: ThermalPoint, family: GibbsFamily) -> np.ndarray:
    """sqrt(rho) for the block-diagonal single-particle state."""
    band = point.band
    n_eff, _ = effective_bloch_vectors(band)
    u = band.energy / (2.0 * point.T)
    roots = [_qubit_root(ui, ni) for ui, ni in zip(u, n_eff)]
    if family is GibbsFamily.SP1:
        weights = np.full(band.n_k, 1.0 / band.n_k)
    else:
        log_z = u + np.log1p(np.exp(-2.0 * u))  # log cosh shifted; common factor cancels
        shifted = np.exp(log_z - log_z.max())
        weights = shifted / shifted.sum()
    return block_diag(*[np.sqrt(w) * b for w, b in zip(weights, roots)])


def _fock_roots(point: ThermalPoint, family: GibbsFamily) -> list[np.ndarray]:
    """Per-momentum sqrt of the normalized 4x4 Fock-space density matrices.

    Basis order: vacuum, the two single-particle modes, doubly occupied. The
    quadratic many-body Hamiltonian acts as diag(0, H_k, Tr H_k); MB1 subtracts
    mu_k times the number operator with mu_k = -T log Z_k.
    """
    band = point.band
    n_eff, _ = effective_bloch_vectors(band)
    u = band.energy / (2.0 * point.T)
    roots = []
    for ui, ni in zip(u, n_eff):
        qubit_root = _qubit_root(ui, ni)
        with np.errstate(over="ignore"):
            z = 2.0 * np.cosh(ui)
            if family is GibbsFamily.MB0:
                vac = 1.0 / (2.0 + z)
                mid = z * vac if np.isfinite(z) else 1.0
                dbl = vac
            else:
                t = 1.0 / (z * z)
                norm = 2.0 + t
                vac, mid, dbl = 1.0 / norm, 1.0 / norm, t / norm
        w = np.zeros((4, 4), dtype=complex)
        w[0, 0] = np.sqrt(vac)
        w[1:3, 1:3] = np.sqrt(mid) * qubit_root
        w[3, 3] = np.sqrt(dbl)
        roots.append(w)
    return roots


def _check_cap(point: ThermalPoint, max_nk: int) -> None:
    if point.band.n_k > max_nk:
        raise ValueError(
            f"dense oracle dimension cap exceeded: N_k = {point.band.n_k} > {max_nk}"
        )


def _check_pair(point: ThermalPoint, point_prime: ThermalPoint) -> None:
    if not np.array_equal(point.band.k, point_prime.band.k):
        raise ValueError("the two thermal points must share an identical k-grid")


def _roots(point, point_prime, family):
    if family.many_body:
        return zip(_fock_roots(point, family), _fock_roots(point_prime, family))
    return [
        (
            _single_particle_root(point, family),
            _single_particle_root(point_prime, family),
        )
    ]


def oracle_fidelity(
    point: ThermalPoint,
    point_prime: ThermalPoint,
    family: GibbsFamily,
    max_nk: int = DEFAULT_MAX_NK,
) -> float:
    """F(rho, rho') by dense decomposition of the assembled matrices.

    Tr sqrt(sqrt(rho) rho' sqrt(rho)) equals the nuclear norm of
    sqrt(rho) sqrt(rho'); the many-body families factor into a product of
    per-momentum Fock-block fidelities.
    """
    _check_pair(point, point_prime)
    _check_cap(point, max_nk)
    out = 1.0
    for a, b in _roots(point, point_prime, family):
        out *= _nuclear_norm(a @ b)
    return out


def oracle_trace_sqrt(
    point: ThermalPoint,
    point_prime: ThermalPoint,
    family: GibbsFamily,
    max_nk: int = DEFAULT_MAX_NK,
) -> float:
    """Tr(sqrt(rho) sqrt(rho')) through the dense route."""
    _check_pair(point, point_prime)
    _check_cap(point, max_nk)
    out = 1.0
    for a, b in _roots(point, point_prime, family):
        out *= float(np.real(np.trace(a @ b)))
    return out


def oracle_delta(
    point: ThermalPoint,
    point_prime: ThermalPoint,
    family: GibbsFamily,
    max_nk: int = DEFAULT_MAX_NK,
) -> float:
    """F - Tr(sqrt(rho) sqrt(rho')) through the dense route."""
    return oracle_fidelity(point, point_prime, family, max_nk) - oracle_trace_sqrt(
        point, point_prime, family, max_nk
    )
