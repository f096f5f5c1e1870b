from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial

import numpy as np
from numpy.typing import ArrayLike, NDArray

from psdo.calculus.cutoff import SmoothCutoff
from psdo.symbols.smooth import smooth_step_derivatives

logger = logging.getLogger(__name__)

MAX_TAYLOR_ORDER = 8
# hs_apply error on the default 400x200 grid, K=128 example13, N=5:
# about 5e-7 at 0.03, 3e-4 at 0.1, 23 at 1.0
DEFAULT_Y_SCALE = 0.03


@dataclass(frozen=True)
class AlmostAnalyticExtension:
    """``chi~(x + iy) = sigma(y) sum_{n <= N} chi^(n)(x) (iy)^n / n!``.

    ``sigma`` is 1 for ``|y| <= y_scale`` and 0 beyond ``2 y_scale``.
    """

    base: SmoothCutoff
    taylor_order: int
    y_scale: float = DEFAULT_Y_SCALE

    def __post_init__(self) -> None:
        if not 1 <= self.taylor_order <= MAX_TAYLOR_ORDER:
            msg = f"taylor order must lie in 1..{MAX_TAYLOR_ORDER}, got {self.taylor_order}"
            raise ValueError(msg)
        if not self.y_scale > 0:
            msg = f"y_scale must be positive, got {self.y_scale}"
            raise ValueError(msg)

    def sigma(self, y: ArrayLike, order: int = 0) -> NDArray[np.float64]:
        y_arr = np.asarray(y, dtype=float)
        s = (np.abs(y_arr) - self.y_scale) / self.y_scale
        steps = smooth_step_derivatives(s, order)
        if order == 0:
            return 1.0 - steps[0]
        return -steps[order] * (np.sign(y_arr) / self.y_scale) ** order

    def _taylor(self, derivs: NDArray[np.float64], y: NDArray[np.float64]) -> NDArray[np.complex128]:
        total = np.zeros(np.broadcast(derivs[0], y).shape, dtype=complex)
        for n in range(self.taylor_order + 1):
            total = total + derivs[n] * (1j * y) ** n / factorial(n)
        return total

    def __call__(self, x: ArrayLike, y: ArrayLike) -> NDArray[np.complex128]:
        x_arr, y_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        derivs = self.base.derivatives(x_arr, self.taylor_order)
        return self.sigma(y_arr) * self._taylor(derivs, y_arr)

    def dbar(self, x: ArrayLike, y: ArrayLike) -> NDArray[np.complex128]:
        """``(d_x + i d_y) chi~ / 2 = sigma chi^(N+1) (iy)^N / (2 N!) + (i/2) sigma' T_N``."""
        x_arr, y_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        n = self.taylor_order
        derivs = self.base.derivatives(x_arr, n + 1)
        remainder = 0.5 * self.sigma(y_arr) * derivs[n + 1] * (1j * y_arr) ** n / factorial(n)
        slope = self.sigma(y_arr, 1)
        if not np.any(slope):
            return remainder.astype(complex)
        return remainder + 0.5j * slope * self._taylor(derivs, y_arr)

    def decay_exponent(
        self, window: tuple[float, float] | None = None, n_y: int = 25, n_x: int = 2001
    ) -> float:
        """Slope of ``log max_x |dbar chi~(x, y)|`` against ``log y``.

        The default window is ``[1e-3 y_scale, y_scale]``, where ``sigma`` is 1.
        """
        window = window or (1e-3 * self.y_scale, self.y_scale)
        ys = np.logspace(np.log10(window[0]), np.log10(window[1]), n_y)
        xs = np.linspace(self.base.outer_a, self.base.outer_b, n_x)
        peaks = np.array([float(np.max(np.abs(self.dbar(xs, y)))) for y in ys])
        if np.any(peaks <= 0):
            msg = "dbar vanishes on part of the window; decay exponent undefined"
            raise ValueError(msg)
        slope, _ = np.polyfit(np.log(ys), np.log(peaks), 1)
        logger.debug("dbar decay exponent %.3f for N=%d", slope, self.taylor_order)
        return float(slope)


def almost_analytic(
    chi: SmoothCutoff, N: int = 5, y_scale: float = DEFAULT_Y_SCALE
) -> AlmostAnalyticExtension:
    return AlmostAnalyticExtension(base=chi, taylor_order=N, y_scale=y_scale)
