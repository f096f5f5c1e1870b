from __future__ import annotations

import logging

import numpy as np

from psdo.quantization.matrix import OperatorMatrix, compressed_norm
from psdo.symbols.circle import CircleSymbol

logger = logging.getLogger(__name__)

WEYL = 0.5


def quantize_circle(a: CircleSymbol, K: int, t: float = WEYL) -> OperatorMatrix:
    """Finite section of ``Op_t(a)``: ``M[j, k] = c_{j-k}(2 pi (t k + (1 - t) j))``.

    Entries are closed-form profile evaluations. For ``t = 1/2`` the frequency is the
    midpoint ``pi (j + k)``, symmetric in ``(j, k)``.
    """
    if not 0.0 <= t <= 1.0:
        msg = f"t must lie in [0, 1], got {t}"
        raise ValueError(msg)
    if K < a.bandwidth:
        msg = f"K={K} is smaller than the symbol bandwidth {a.bandwidth}"
        raise ValueError(msg)
    bands = {}
    for mode, profile in a.coeffs.items():
        k = np.arange(max(-K, -K - mode), min(K, K - mode) + 1)
        j = k + mode
        freq = np.pi * (j + k) if t == WEYL else 2.0 * np.pi * (t * k + (1.0 - t) * j)
        bands[mode] = profile(freq.astype(float))
    logger.debug("quantized symbol with %d bands at K=%d, t=%g", len(bands), K, t)
    return OperatorMatrix.from_bands(K, t, bands)


def order_gap_norm(a: CircleSymbol, K: int, n: int) -> float:
    """``||P_{>n} (Op_1(a) - Op_{1/2}(a)) P_{>n}||``."""
    if n >= K:
        msg = f"n={n} must be smaller than K={K}"
        raise ValueError(msg)
    gap = quantize_circle(a, K, 1.0).dense - quantize_circle(a, K, WEYL).dense
    return compressed_norm(gap, K, n)
