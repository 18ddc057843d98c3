"""Split-step topological quantum walks and their thermal states.

Momentum-space bands and winding numbers (:mod:`chiralwalk.bloch`), closed-form
fidelity and Uhlmann departure between Boltzmann-Gibbs states with dense-matrix
oracles (:mod:`chiralwalk.gibbs`, :mod:`chiralwalk.oracle`), real-space
domain-wall walks and thermally smeared edge states
(:mod:`chiralwalk.realspace`), and a deterministic (theta, T) sweep engine with
CSV output (:mod:`chiralwalk.scan`, :mod:`chiralwalk.cli`).
"""

from .bloch import (
    BlochBand,
    BlochSample,
    SymmetryClass,
    WalkParameters,
    band_structure,
    bloch_decompose,
    bloch_step_unitary,
    check_chiral_symmetry,
    chiral_axis,
    coin_matrix,
    gap_diagnostics,
    momentum_grid,
    shift_matrix,
    winding_number,
)
from .errors import (
    ChiralWalkError,
    DomainError,
    GapClosedError,
    IllDefinedLimitError,
    NumericalError,
    ResolutionError,
)
from .gibbs import (
    GibbsFamily,
    PerKCore,
    ThermalPoint,
    ZeroTemperatureState,
    cross_term,
    delta,
    fidelity,
    per_k_cores,
    sqrt_cross_term,
    zero_T_limit,
)
from .oracle import oracle_delta, oracle_fidelity, oracle_trace_sqrt
from .realspace import (
    CoinProfile,
    EdgeState,
    SpectralData,
    build_floquet,
    effective_gibbs_energies,
    find_edge_states,
    quasienergy_spectrum,
    thermal_position_distribution,
    wall_peak_site,
)
from .scan import SweepConfig, SweepRecord, SweepStats, run_sweep, write_csv

__version__ = "0.1.0"

__all__ = [
    "BlochBand",
    "BlochSample",
    "ChiralWalkError",
    "CoinProfile",
    "DomainError",
    "EdgeState",
    "GapClosedError",
    "GibbsFamily",
    "IllDefinedLimitError",
    "NumericalError",
    "PerKCore",
    "ResolutionError",
    "SpectralData",
    "SweepConfig",
    "SweepRecord",
    "SweepStats",
    "SymmetryClass",
    "ThermalPoint",
    "WalkParameters",
    "ZeroTemperatureState",
    "band_structure",
    "bloch_decompose",
    "bloch_step_unitary",
    "build_floquet",
    "check_chiral_symmetry",
    "chiral_axis",
    "coin_matrix",
    "cross_term",
    "delta",
    "effective_gibbs_energies",
    "fidelity",
    "find_edge_states",
    "gap_diagnostics",
    "momentum_grid",
    "oracle_delta",
    "oracle_fidelity",
    "oracle_trace_sqrt",
    "per_k_cores",
    "quasienergy_spectrum",
    "run_sweep",
    "shift_matrix",
    "sqrt_cross_term",
    "thermal_position_distribution",
    "wall_peak_site",
    "winding_number",
    "write_csv",
    "zero_T_limit",
]
