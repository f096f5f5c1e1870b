from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
from numpy.typing import ArrayLike, NDArray

from psdo.symbols.smooth import smooth_step_derivatives

# order N + 1 of the almost analytic extension with N <= 8
MAX_DERIVATIVE = 9


@dataclass(frozen=True)
class SmoothCutoff:
    """``chi = 1`` on ``[a, b]``, ``chi = 0`` outside ``(a', b')``.

    ``chi(x) = g((x - a') / (a - a')) * g((b' - x) / (b' - b))`` with ``g`` the exp(-1/s) step.
    """

    a: float
    b: float
    outer_a: float
    outer_b: float

    def __post_init__(self) -> None:
        if not (self.outer_a < self.a < self.b < self.outer_b):
            msg = f"cutoff needs a' < a < b < b', got ({self.a}, {self.b}) in ({self.outer_a}, {self.outer_b})"
            raise ValueError(msg)

    @property
    def inner(self) -> tuple[float, float]:
        return (self.a, self.b)

    @property
    def support(self) -> tuple[float, float]:
        return (self.outer_a, self.outer_b)

    def derivatives(self, x: ArrayLike, max_order: int) -> NDArray[np.float64]:
        """``chi^(n)(x)`` for ``n = 0..max_order``, exact."""
        if not 0 <= max_order <= MAX_DERIVATIVE:
            msg = f"derivative order must lie in 0..{MAX_DERIVATIVE}, got {max_order}"
            raise ValueError(msg)
        x_arr = np.asarray(x, dtype=float)
        rise = self.a - self.outer_a
        fall = self.outer_b - self.b
        left = smooth_step_derivatives((x_arr - self.outer_a) / rise, max_order)
        right = smooth_step_derivatives((self.outer_b - x_arr) / fall, max_order)
        for n in range(max_order + 1):
            left[n] /= rise**n
            right[n] *= (-1.0 / fall) ** n
        out = np.zeros_like(left)
        for n in range(max_order + 1):
            for k in range(n + 1):
                out[n] += comb(n, k) * left[k] * right[n - k]
        return out

    def derivative(self, x: ArrayLike, order: int = 1) -> NDArray[np.float64]:
        return self.derivatives(x, order)[order]

    def __call__(self, x: ArrayLike) -> NDArray[np.float64]:
        return self.derivatives(x, 0)[0]

    def describe(self) -> str:
        return f"chi = 1 on [{self.a:g}, {self.b:g}], supp chi = [{self.outer_a:g}, {self.outer_b:g}]"


def build_cutoff(a: float, b: float, outer_a: float, outer_b: float) -> SmoothCutoff:
    return SmoothCutoff(float(a), float(b), float(outer_a), float(outer_b))
