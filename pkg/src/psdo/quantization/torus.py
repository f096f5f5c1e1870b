from __future__ import annotations

import numpy as np

from psdo.quantization.matrix import OperatorMatrix, lattice_size
from psdo.symbols.torus import TorusSymbol2D


def torus_index(K: int, k1: int, k2: int) -> int:
    """Flat position of lattice mode ``(k1, k2)``: ``(k1 + K)(2K + 1) + (k2 + K)``."""
    return (k1 + K) * lattice_size(K) + (k2 + K)


def quantize_torus2_weyl(a2: TorusSymbol2D, K: int) -> OperatorMatrix:
    """Weyl finite section on the 2-torus: ``M[j, k] = c_{j-k}(pi (j + k))`` componentwise."""
    l1_max, l2_max = a2.bandwidth
    if K < max(l1_max, l2_max):
        msg = f"K={K} is smaller than the symbol bandwidth {a2.bandwidth}"
        raise ValueError(msg)
    n = lattice_size(K)
    axis = np.arange(-K, K + 1)
    k1, k2 = (g.reshape(-1) for g in np.meshgrid(axis, axis, indexing="ij"))
    columns = (k1 + K) * n + (k2 + K)
    out = np.zeros((n * n, n * n), dtype=complex)
    for (l1, l2), profile in a2.coeffs.items():
        j1, j2 = k1 + l1, k2 + l2
        valid = (np.abs(j1) <= K) & (np.abs(j2) <= K)
        rows = (j1[valid] + K) * n + (j2[valid] + K)
        out[rows, columns[valid]] = profile(np.pi * (j1[valid] + k1[valid]), np.pi * (j2[valid] + k2[valid]))
    return OperatorMatrix.from_dense(
        K, 0.5, out, max(l1_max, l2_max), geometry="torus2", flat_bandwidth=l1_max * n + l2_max
    )
