"""Momentum-space description of the split-step walk.

A single step of the walk is the unitary U(k) = T1(k) R(theta2) T0(k) R(theta1),
built from partial shifts and coin rotations. Every U(k) lies in SU(2) and can be
written as cos(E) I - i sin(E) (n . sigma), which defines the quasienergy band
E_k in [0, pi] and the unit Bloch vector n_k. Chiral symmetry pins n_k to the
great circle orthogonal to a theta1-dependent axis; the winding of n_k around
that axis is the topological invariant.

Conventions fixed here:
  - Fourier transform |k> = N^{-1/2} sum_x e^{ikx} |x>, so T0(k) = diag(e^{-ik}, 1)
    and T1(k) = diag(1, e^{+ik}).
  - Time step delta_t = 1; quasienergies live in the first Brillouin zone.
  - k-grid k_j = -pi + 2*pi*(j+1)/N_k, i.e. half-open (-pi, pi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import GapClosedError, ResolutionError

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = np.array([SIGMA_X, SIGMA_Y, SIGMA_Z])

#: Bloch vectors with sin(E) below this are declared ill-defined.
DEFAULT_GAP_TOL = 1e-7

_DEGENERATE_SENTINEL = (math.nan, math.nan, math.nan)


class SymmetryClass(Enum):
    """Chiral symmetry class realized by the walk protocol."""

    BDI = "bdi"
    AIII = "aiii"

    @property
    def canonical_theta1(self) -> float:
        return -math.pi / 2 if self is SymmetryClass.BDI else math.pi / 2

    @property
    def canonical_axis(self) -> tuple[float, float, float]:
        if self is SymmetryClass.BDI:
            return (0.0, 1.0, 0.0)
        r = 1.0 / math.sqrt(2.0)
        return (0.0, r, r)


@dataclass(frozen=True)
class WalkParameters:
    """Coin angles and rotation axis defining one walk protocol.

    ``theta1`` is fixed by the symmetry class (-pi/2 for BDI, +pi/2 for AIII);
    passing any other value requires ``theta1_override=True`` and is meant for
    exploratory use only.
    """

    symmetry_class: SymmetryClass
    theta1: float
    theta2: float
    axis: tuple[float, float, float]
    theta1_override: bool = False

    def __post_init__(self) -> None:
        norm = math.sqrt(sum(a * a for a in self.axis))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"rotation axis must be a unit vector, got |axis| = {norm!r}")
        if not self.theta1_override:
            want = self.symmetry_class.canonical_theta1
            if abs(self.theta1 - want) > 1e-12:
                raise ValueError(
                    f"theta1 = {self.theta1!r} breaks the {self.symmetry_class.name} "
                    f"convention (expected {want!r}); pass theta1_override=True to allow"
                )
            want_axis = self.symmetry_class.canonical_axis
            if max(abs(a - b) for a, b in zip(self.axis, want_axis)) > 1e-12:
                raise ValueError(
                    f"axis {self.axis!r} breaks the {self.symmetry_class.name} convention; "
                    "pass theta1_override=True to allow"
                )

    @classmethod
    def bdi(cls, theta2: float) -> "WalkParameters":
        sc = SymmetryClass.BDI
        return cls(sc, sc.canonical_theta1, theta2, sc.canonical_axis)

    @classmethod
    def aiii(cls, theta2: float) -> "WalkParameters":
        sc = SymmetryClass.AIII
        return cls(sc, sc.canonical_theta1, theta2, sc.canonical_axis)

    @classmethod
    def for_class(cls, symmetry_class: SymmetryClass, theta2: float) -> "WalkParameters":
        return cls.bdi(theta2) if symmetry_class is SymmetryClass.BDI else cls.aiii(theta2)

    @property
    def axis_vector(self) -> np.ndarray:
        return np.array(self.axis, dtype=float)


@dataclass(frozen=True)
class BlochSample:
    """Band data at one momentum: quasienergy, Bloch vector, degeneracy flag."""

    k: float
    energy: float
    n: tuple[float, float, float]
    degenerate: bool


@dataclass
class BlochBand:
    """Quasienergy band sampled on the uniform half-open k-grid.

    ``bloch_vectors`` rows are NaN sentinels where ``degenerate`` is set
    (sin E below the decomposition tolerance, so n is ill-defined).
    """

    params: WalkParameters
    k: np.ndarray
    energy: np.ndarray
    bloch_vectors: np.ndarray
    degenerate: np.ndarray
    _samples: list[BlochSample] | None = field(default=None, repr=False, compare=False)

    @property
    def n_k(self) -> int:
        return self.k.size

    @property
    def samples(self) -> list[BlochSample]:
        if self._samples is None:
            self._samples = [
                BlochSample(float(k), float(e), tuple(n), bool(d))
                for k, e, n, d in zip(self.k, self.energy, self.bloch_vectors, self.degenerate)
            ]
        return self._samples


def momentum_grid(n_k: int) -> np.ndarray:
    """Uniform grid k_j = -pi + 2*pi*(j+1)/N_k, excluding -pi and including +pi."""
    if n_k < 8 or n_k % 2:
        raise ValueError(f"N_k must be even and >= 8, got {n_k}")
    j = np.arange(n_k)
    return -math.pi + 2.0 * math.pi * (j + 1) / n_k


def coin_matrix(theta: float, axis) -> np.ndarray:
    """Coin rotation R(theta) = exp(i theta/2 axis.sigma) as a 2x2 unitary."""
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1.0) > 1e-12:
        raise ValueError(f"axis must be a unit 3-vector, got {axis!r}")
    half = 0.5 * theta
    return math.cos(half) * np.eye(2, dtype=complex) + 1j * math.sin(half) * np.einsum(
        "j,jab->ab", axis, PAULI
    )


def shift_matrix(k: float, c: int) -> np.ndarray:
    """Momentum representation of the partial shift T_c.

    T0 moves coin-0 one site right, T1 moves coin-1 one site left; with our
    Fourier sign this gives T0(k) = diag(e^{-ik}, 1), T1(k) = diag(1, e^{+ik}).
    """
    if c not in (0, 1):
        raise ValueError(f"coin index must be 0 or 1, got {c!r}")
    if c == 0:
        return np.diag([np.exp(-1j * k), 1.0]).astype(complex)
    return np.diag([1.0, np.exp(1j * k)]).astype(complex)


def bloch_step_unitary(params: WalkParameters, k: float) -> np.ndarray:
    """One walk step at momentum k: U = T1(k) R(theta2) T0(k) R(theta1)."""
    r1 = coin_matrix(params.theta1, params.axis_vector)
    r2 = coin_matrix(params.theta2, params.axis_vector)
    return shift_matrix(k, 1) @ r2 @ shift_matrix(k, 0) @ r1


def _step_unitaries(params: WalkParameters, k: np.ndarray) -> np.ndarray:
    """Vectorized U(k) for an array of momenta, shape (len(k), 2, 2)."""
    r1 = coin_matrix(params.theta1, params.axis_vector)
    r2 = coin_matrix(params.theta2, params.axis_vector)
    # T0(k) R1 = diag(e^{-ik}, 1) R1; assemble row blocks without a Python loop.
    t0r1 = np.empty((k.size, 2, 2), dtype=complex)
    t0r1[:, 0, :] = np.exp(-1j * k)[:, None] * r1[0, :]
    t0r1[:, 1, :] = r1[1, :]
    core = np.einsum("ab,kbc->kac", r2, t0r1)
    core[:, 1, :] *= np.exp(1j * k)[:, None]
    return core


def bloch_decompose(U: np.ndarray, tol_gap: float = DEFAULT_GAP_TOL):
    """Split a special-unitary 2x2 into (energy, bloch vector, degenerate flag).

    Writes U = cos(E) I - i sin(E) (n . sigma) with E = arccos(Re Tr U / 2) in
    [0, pi] and n_j = -Im Tr(sigma_j U) / (2 sin E); this is the principal
    logarithm restricted to the first quasienergy Brillouin zone. When
    sin E < tol_gap the two quasienergies +-E coincide modulo 2*pi, n is
    ill-defined, and a NaN sentinel is returned with the flag set.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {U.shape}")
    if abs(np.linalg.det(U) - 1.0) > 1e-10 or np.abs(U @ U.conj().T - np.eye(2)).max() > 1e-10:
        raise ValueError("input is not special-unitary within 1e-10")
    cos_e = 0.5 * np.real(np.trace(U))
    energy = math.acos(min(1.0, max(-1.0, cos_e)))
    sin_e = math.sin(energy)
    if sin_e < tol_gap:
        return energy, _DEGENERATE_SENTINEL, True
    n = np.array([-np.imag(np.trace(s @ U)) / (2.0 * sin_e) for s in PAULI])
    n /= np.linalg.norm(n)  # unit analytically; renormalize away rounding
    return energy, tuple(n), False


def band_structure(
    params: WalkParameters, n_k: int, tol_gap: float = DEFAULT_GAP_TOL
) -> BlochBand:
    """Sample (E_k, n_k) over the uniform momentum grid."""
    k = momentum_grid(n_k)
    u = _step_unitaries(params, k)
    cos_e = 0.5 * np.real(u[:, 0, 0] + u[:, 1, 1])
    energy = np.arccos(np.clip(cos_e, -1.0, 1.0))
    sin_e = np.sin(energy)
    degenerate = sin_e < tol_gap
    # n_j = -Im Tr(sigma_j U) / (2 sin E), expanded per Pauli component.
    denom = np.where(degenerate, 1.0, 2.0 * sin_e)
    nx = -np.imag(u[:, 0, 1] + u[:, 1, 0]) / denom
    ny = -np.imag(1j * (u[:, 1, 0] - u[:, 0, 1])) / denom
    nz = -np.imag(u[:, 0, 0] - u[:, 1, 1]) / denom
    vectors = np.stack([nx, ny, nz], axis=1)
    norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    norms[degenerate] = 1.0
    vectors /= norms  # unit analytically; renormalize away rounding
    vectors[degenerate] = np.nan
    return BlochBand(params, k, energy, vectors, degenerate)


def chiral_axis(symmetry_class: SymmetryClass, theta1: float) -> np.ndarray:
    """Axis orthogonal to the great circle traced by n_k, as a unit 3-vector.

    The z-component sign is tied to the coin sign convention
    R(theta) = exp(+i theta/2 axis.sigma) fixed in :func:`coin_matrix`;
    flipping that sign would flip the sign of the sin terms here.
    """
    c, s = math.cos(theta1 / 2), math.sin(theta1 / 2)
    if symmetry_class is SymmetryClass.BDI:
        return np.array([c, 0.0, -s])
    r = 1.0 / math.sqrt(2.0)
    return np.array([c, -r * s, -r * s])


def _winding_frame(axis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal pair spanning the plane orthogonal to the axis."""
    z = np.array([0.0, 0.0, 1.0])
    e1 = z - np.dot(axis, z) * axis
    if np.linalg.norm(e1) < 1e-9:
        e1 = np.array([1.0, 0.0, 0.0]) - axis[0] * axis
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(axis, e1)


def winding_number(band: BlochBand, axis) -> int:
    """Signed number of turns of n_k around the chiral axis over the k-loop.

    The sign depends on the fixed frame orientation and Fourier convention;
    the magnitude is convention-free.
    """
    axis = np.asarray(axis, dtype=float)
    if band.degenerate.any():
        raise GapClosedError(
            "band has degenerate samples; the winding number is defined only for gapped bands"
        )
    e1, e2 = _winding_frame(axis)
    phi = np.arctan2(band.bloch_vectors @ e2, band.bloch_vectors @ e1)
    increments = np.diff(phi, append=phi[:1])  # close the loop
    increments = np.mod(increments + math.pi, 2.0 * math.pi) - math.pi
    total = increments.sum() / (2.0 * math.pi)
    nearest = round(total)
    if abs(total - nearest) > 0.01:
        raise ResolutionError(
            f"winding sum {total!r} is not within 0.01 of an integer; increase N_k"
        )
    return int(nearest)


@dataclass(frozen=True)
class GapDiagnostics:
    gap0: float
    gap_pi: float


def gap_diagnostics(band: BlochBand) -> GapDiagnostics:
    """Minimal distances of the band from the two gap-closing energies 0 and pi."""
    if band.energy.size == 0:
        raise ValueError("band is empty")
    return GapDiagnostics(float(band.energy.min()), float(math.pi - band.energy.max()))


def check_chiral_symmetry(band: BlochBand, axis) -> float:
    """Worst-case |n_k . axis| over the non-degenerate samples (0 in exact arithmetic)."""
    axis = np.asarray(axis, dtype=float)
    ok = ~band.degenerate
    if not ok.any():
        return 0.0
    return float(np.abs(band.bloch_vectors[ok] @ axis).max())
