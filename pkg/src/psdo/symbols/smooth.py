"""Smooth transition built on exp(-1/s).

``smooth_step(s)`` rises from 0 (s <= 0) to 1 (s >= 1) and is C^inf. Derivatives of any
order are exact: f(s) = exp(-1/s) has f^(n)(s) = P_n(1/s) exp(-1/s) with
P_{n+1}(u) = u^2 (P_n(u) - P_n'(u)), and the quotient rule is unrolled with Leibniz.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np
from numpy.polynomial import Polynomial
from numpy.typing import ArrayLike, NDArray

# g'(1/2) for the bridge below; it is the largest slope of the step.
BRIDGE_SLOPE = 2.0

# exp(-u) underflows past this point; P_n(u) exp(-u) is treated as 0.
_UNDERFLOW_U = 700.0


@lru_cache(maxsize=32)
def _exp_inverse_polynomial(order: int) -> Polynomial:
    poly = Polynomial([1.0])
    u_squared = Polynomial([0.0, 0.0, 1.0])
    for _ in range(order):
        poly = u_squared * (poly - poly.deriv())
    return poly


def _exp_inverse_derivative(s: NDArray[np.float64], order: int) -> NDArray[np.float64]:
    out = np.zeros_like(s)
    positive = s > 0
    if not np.any(positive):
        return out
    u = 1.0 / s[positive]
    safe = u < _UNDERFLOW_U
    values = np.zeros_like(u)
    values[safe] = _exp_inverse_polynomial(order)(u[safe]) * np.exp(-u[safe])
    out[positive] = values
    return out


def smooth_step_derivatives(s: ArrayLike, max_order: int) -> NDArray[np.float64]:
    """Return ``g^(n)(s)`` for ``n = 0..max_order`` stacked along the first axis."""
    if max_order < 0:
        msg = f"max_order must be non-negative, got {max_order}"
        raise ValueError(msg)
    s_arr = np.asarray(s, dtype=float)
    flat = s_arr.reshape(-1)
    rising = np.stack([_exp_inverse_derivative(flat, n) for n in range(max_order + 1)])
    falling = np.stack([(-1.0) ** n * _exp_inverse_derivative(1.0 - flat, n) for n in range(max_order + 1)])
    denom = rising + falling

    step = np.zeros_like(rising)
    step[0] = rising[0] / denom[0]
    for n in range(1, max_order + 1):
        acc = rising[n].copy()
        for k in range(n):
            acc -= comb(n, k) * step[k] * denom[n - k]
        step[n] = acc / denom[0]

    # pin the flat ends exactly
    step[:, flat <= 0.0] = 0.0
    step[:, flat >= 1.0] = 0.0
    step[0, flat >= 1.0] = 1.0
    return step.reshape((max_order + 1, *s_arr.shape))


def smooth_step(s: ArrayLike, order: int = 0) -> NDArray[np.float64]:
    return smooth_step_derivatives(s, order)[order]
