"""Position-space walk with a domain wall, edge states, thermal distributions.

The walk runs on N sites with periodic boundaries and a position-dependent
second coin angle: theta2(x) jumps from one value to another at a wall site
x0, creating two phase boundaries (the wall and the periodic seam). The
one-step operator U is built explicitly as a dense 2N x 2N unitary and
diagonalized; localized eigenstates pinned at quasienergy 0 or pi are the
edge modes. A stationary thermal distribution over the sites is obtained by
promoting both the 0- and the pi-quasienergy states to ground states through
the fold E -> min(|eps|, pi - |eps|) and Boltzmann-weighting all eigenstates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .bloch import coin_matrix
from .errors import DomainError, NumericalError


@dataclass(frozen=True)
class CoinProfile:
    """Walk on N sites whose second coin angle switches value at a wall.

    theta2(x) equals ``theta2_left`` for x < x0 and ``theta2_right`` for
    x >= x0 (the wall site belongs to the right segment). Only periodic
    boundaries are supported; the wrap-around seam is a second phase boundary.
    """

    n_sites: int
    theta1: float
    theta2_left: float
    theta2_right: float
    wall_position: int
    axis: tuple[float, float, float] = (0.0, 1.0, 0.0)
    boundary: str = "periodic"

    def __post_init__(self) -> None:
        if self.n_sites < 16:
            raise ValueError(f"need at least 16 sites, got {self.n_sites}")
        if not 0 <= self.wall_position < self.n_sites:
            raise ValueError(
                f"wall position {self.wall_position} outside 0..{self.n_sites - 1}"
            )
        if self.boundary != "periodic":
            raise ValueError(f"only periodic boundaries are supported, got {self.boundary!r}")
        norm = math.sqrt(sum(a * a for a in self.axis))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"rotation axis must be a unit vector, got |axis| = {norm!r}")

    @classmethod
    def uniform(cls, n_sites: int, theta1: float, theta2: float, **kw) -> "CoinProfile":
        return cls(n_sites, theta1, theta2, theta2, n_sites // 2, **kw)

    @classmethod
    def bdi_wall(
        cls,
        n_sites: int = 128,
        theta2_left: float = 3 * math.pi / 4,
        theta2_right: float = math.pi / 4,
        wall_position: int | None = None,
    ) -> "CoinProfile":
        """Domain wall between the trivial and the winding BDI phase."""
        x0 = n_sites // 2 if wall_position is None else wall_position
        return cls(n_sites, -math.pi / 2, theta2_left, theta2_right, x0)

    def theta2_of_site(self) -> np.ndarray:
        x = np.arange(self.n_sites)
        return np.where(x < self.wall_position, self.theta2_left, self.theta2_right)


@dataclass
class SpectralData:
    """Eigensystem of the one-step operator, sorted by quasienergy.

    ``eigenvectors`` columns are orthonormal; ``site_probabilities[j, x]`` is
    the total weight of eigenstate j on site x (both coin components).
    """

    quasienergies: np.ndarray
    eigenvectors: np.ndarray
    site_probabilities: np.ndarray
    ipr: np.ndarray

    @property
    def n_sites(self) -> int:
        return self.site_probabilities.shape[1]


@dataclass(frozen=True)
class EdgeState:
    index: int
    quasienergy: float
    peak_site: int
    ipr: float


def build_floquet(profile: CoinProfile) -> np.ndarray:
    """Dense one-step operator U = T1 R2 T0 R1 with position-dependent R2."""
    n = profile.n_sites
    axis = np.array(profile.axis)
    eye_sites = np.eye(n)
    shift_right = np.roll(eye_sites, 1, axis=0)  # |x> -> |x+1 mod N>
    shift_left = shift_right.T
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p1 = np.diag([0.0, 1.0]).astype(complex)
    t0 = np.kron(shift_right, p0) + np.kron(eye_sites, p1)
    t1 = np.kron(shift_left, p1) + np.kron(eye_sites, p0)
    r1 = np.kron(eye_sites, coin_matrix(profile.theta1, axis))
    r2 = np.zeros((2 * n, 2 * n), dtype=complex)
    for x, theta in enumerate(profile.theta2_of_site()):
        r2[2 * x : 2 * x + 2, 2 * x : 2 * x + 2] = coin_matrix(float(theta), axis)
    u = t1 @ r2 @ t0 @ r1
    residual = np.abs(u @ u.conj().T - np.eye(2 * n)).max()
    if residual > 1e-10:
        raise NumericalError(f"one-step operator not unitary, residual {residual:.3e}")
    return u


def quasienergy_spectrum(U: np.ndarray) -> SpectralData:
    """Diagonalize a unitary and return quasienergies in (-pi, pi].

    Uses the complex Schur form: for a normal matrix it is diagonal and the
    transformation columns are orthonormal eigenvectors by construction.
    """
    U = np.asarray(U, dtype=complex)
    dim = U.shape[0]
    if np.abs(U @ U.conj().T - np.eye(dim)).max() > 1e-8:
        raise ValueError("input is not unitary within 1e-8")
    t, q = schur(U, output="complex")
    residual = np.abs(t - np.diag(np.diag(t))).max()
    if residual > 1e-8:
        raise NumericalError(
            f"Schur form of a normal matrix not diagonal, residual {residual:.3e}"
        )
    eps = -np.angle(np.diag(t))
    eps = np.where(eps <= -math.pi, eps + 2.0 * math.pi, eps)
    order = np.argsort(eps, kind="stable")
    eps = eps[order]
    vectors = q[:, order]
    amp2 = np.abs(vectors) ** 2
    site_prob = (amp2[0::2, :] + amp2[1::2, :]).T  # (state, site)
    ipr = (site_prob**2).sum(axis=1)
    return SpectralData(eps, vectors, site_prob, ipr)


def find_edge_states(
    spec: SpectralData, e_tol: float = 1e-4, ipr_factor: float = 5.0
) -> list[EdgeState]:
    """Localized eigenstates pinned near quasienergy 0 or pi."""
    folded = effective_gibbs_energies(spec.quasienergies)
    localized = spec.ipr > ipr_factor / spec.n_sites
    hits = np.nonzero((folded < e_tol) & localized)[0]
    return [
        EdgeState(
            int(j),
            float(spec.quasienergies[j]),
            int(np.argmax(spec.site_probabilities[j])),
            float(spec.ipr[j]),
        )
        for j in hits
    ]


def effective_gibbs_energies(quasienergies: np.ndarray) -> np.ndarray:
    """Fold quasienergies so both 0 and pi become ground-state energies.

    E_j = min(|eps_j|, pi - |eps_j|) >= 0; bulk bands of a gapped wall profile
    stay strictly positive, so the ground-state degeneracy equals the number
    of edge modes.
    """
    a = np.abs(np.asarray(quasienergies, dtype=float))
    return np.minimum(a, math.pi - a)


def wall_peak_site(spec: SpectralData, wall_position: int, halfwidth: int = 2) -> int:
    """Site carrying the wall edge mode's maximum weight, near the nominal wall.

    The Heaviside step assigns the wall site to the right segment, so the
    physical boundary lies between wall_position - 1 and wall_position and the
    mode may peak on either side; this resolves the one-site ambiguity.
    """
    n = spec.n_sites
    window = [(wall_position + d) % n for d in range(-halfwidth, halfwidth + 1)]
    p = thermal_position_distribution(spec, 0.05)
    return int(window[int(np.argmax(p[window]))])


def thermal_position_distribution(spec: SpectralData, T: float) -> np.ndarray:
    """Site distribution of the stationary thermal state at temperature T.

    Eigenstates are Boltzmann-weighted with the folded energies, so both 0-
    and pi-quasienergy edge modes dominate as T -> 0 and the distribution
    flattens to 1/N as T -> infinity.
    """
    if not T > 0.0:
        raise DomainError(f"temperature must be strictly positive, got {T!r}")
    folded = effective_gibbs_energies(spec.quasienergies)
    logw = -folded / T
    logw -= logw.max()
    w = np.exp(logw)
    w /= w.sum()
    return w @ spec.site_probabilities
