"""Spectral-measure diagnostics for a probe vector ``u``.

``spectral_density`` is the Poisson-smoothed spectral measure of ``u`` and
``survival_average`` the long-time average of ``|<u, e^{-itH} u>|^2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from psdo.quantization.matrix import Geometry, lattice_size
from psdo.spectral.decomposition import SpectralDecomposition

logger = logging.getLogger(__name__)

DEFAULT_SPACING_FACTOR = 10.0
SPACING_FLOOR_FACTOR = 2.0
NORM_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class DensityResult:
    grid: NDArray[np.float64]
    values: NDArray[np.float64]
    eps: float
    mean_spacing: float
    below_floor: bool


def probe_vector(kind: str, K: int, geometry: Geometry = "circle", seed: int = 0) -> NDArray[np.complex128]:
    """Unit probe: ``constant`` (mode 0), ``mode:<k>``, ``fourier-ones`` or ``random``."""
    n = lattice_size(K)
    dim = n if geometry == "circle" else n * n
    zero = K if geometry == "circle" else K * n + K
    u = np.zeros(dim, dtype=complex)
    if kind == "constant":
        u[zero] = 1.0
    elif kind.startswith("mode:"):
        k = int(kind.split(":", 1)[1])
        if abs(k) > K or geometry != "circle":
            msg = f"probe {kind!r} is outside the circle lattice -{K}..{K}"
            raise ValueError(msg)
        u[K + k] = 1.0
    elif kind == "fourier-ones":
        u[:] = 1.0 / np.sqrt(dim)
    elif kind == "random":
        rng = np.random.default_rng(seed)
        u = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        u /= np.linalg.norm(u)
    else:
        msg = f"unknown probe kind {kind!r}"
        raise ValueError(msg)
    return u


def _check_unit(u: NDArray[np.complex128]) -> None:
    norm = float(np.linalg.norm(u))
    if abs(norm - 1.0) > NORM_TOLERANCE:
        msg = f"probe vector must have unit norm, got {norm:.12g}"
        raise ValueError(msg)


def mean_level_spacing(dec: SpectralDecomposition, interval: tuple[float, float] | None = None) -> float:
    eigs = dec.eigenvalues
    if interval is not None:
        eigs = eigs[(eigs >= interval[0]) & (eigs <= interval[1])]
    if eigs.size < 2:
        lo, hi = interval if interval is not None else (float(dec.eigenvalues[0]), float(dec.eigenvalues[-1]))
        return (hi - lo) / max(dec.dim, 1)
    return float((eigs[-1] - eigs[0]) / (eigs.size - 1))


def spectral_density(
    dec: SpectralDecomposition, u: ArrayLike, grid: ArrayLike, eps: float | None = None
) -> DensityResult:
    """``rho(lambda) = (1/pi) sum_n |<v_n, u>|^2 eps / ((lambda - lambda_n)^2 + eps^2)``.

    ``eps`` defaults to 10x the mean level spacing on the grid range, or 10x the grid step
    when that spacing is 0; a value below twice the spacing is flagged and logged.
    """
    u_arr = np.asarray(u, dtype=complex)
    _check_unit(u_arr)
    lam = np.asarray(grid, dtype=float)
    spacing = mean_level_spacing(dec, (float(lam.min()), float(lam.max())))
    if spacing <= 0:
        # every eigenvalue on the grid range coincides
        spacing = float(np.ptp(lam)) / (lam.size - 1) if lam.size > 1 and np.ptp(lam) > 0 else 1.0 / dec.dim
        logger.info("degenerate spectrum on the grid range; spacing falls back to %.3e", spacing)
    width = DEFAULT_SPACING_FACTOR * spacing if eps is None else float(eps)
    if width <= 0:
        msg = f"eps must be positive, got {width}"
        raise ValueError(msg)
    below = width < SPACING_FLOOR_FACTOR * spacing
    if below:
        logger.warning("eps=%.3e is below twice the mean level spacing %.3e; density will show the comb", width, spacing)
    weights = dec.weights(u_arr)
    diff = lam[:, None] - dec.eigenvalues[None, :]
    values = (weights[None, :] * width / (diff**2 + width**2)).sum(axis=1) / np.pi
    return DensityResult(grid=lam, values=values, eps=width, mean_spacing=spacing, below_floor=bool(below))


def survival_average(dec: SpectralDecomposition, u: ArrayLike) -> float:
    """``sum_n |<v_n, u>|^4``."""
    u_arr = np.asarray(u, dtype=complex)
    _check_unit(u_arr)
    return float(np.sum(dec.weights(u_arr) ** 2))
