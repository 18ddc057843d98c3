import math

import numpy as np

from chiralwalk.bloch import BlochBand, WalkParameters, bloch_decompose, bloch_step_unitary


def band_by_samples(params: WalkParameters, n_k: int) -> BlochBand:
    """Assemble a band sample-by-sample; allows grids below band_structure's minimum."""
    k = -math.pi + 2.0 * math.pi * (np.arange(n_k) + 1) / n_k
    energy = np.empty(n_k)
    vectors = np.empty((n_k, 3))
    degenerate = np.zeros(n_k, dtype=bool)
    for j, kj in enumerate(k):
        e, n, d = bloch_decompose(bloch_step_unitary(params, float(kj)))
        energy[j], vectors[j], degenerate[j] = e, n, d
    return BlochBand(params, k, energy, vectors, degenerate)
