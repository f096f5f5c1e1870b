"""Two routes to ``f(H)``: spectral sums and the Helffer-Sjostrand area integral."""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, Field, model_validator

from psdo.calculus.cutoff import SmoothCutoff
from psdo.calculus.extension import AlmostAnalyticExtension, almost_analytic
from psdo.errors import NonHermitianError
from psdo.quantization.matrix import OperatorMatrix
from psdo.spectral.decomposition import SpectralDecomposition, eigendecompose

logger = logging.getLogger(__name__)

ComplexMatrix = NDArray[np.complex128]


class QuadratureGrid(BaseModel):
    """Midpoint grid over ``supp chi x [-2 Y0, 2 Y0]``; ``ny`` even so no node sits on the real axis."""

    nx: int = Field(default=400, gt=0)
    ny: int = Field(default=200, gt=0)
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _even_rows(self) -> QuadratureGrid:
        if self.ny % 2:
            msg = f"ny must be even, got {self.ny}"
            raise ValueError(msg)
        return self

    def doubled(self) -> QuadratureGrid:
        return QuadratureGrid(nx=2 * self.nx, ny=2 * self.ny, workers=self.workers)


def eig_apply(dec: SpectralDecomposition, f: Callable[[NDArray[np.float64]], ArrayLike]) -> ComplexMatrix:
    """``sum_n f(lambda_n) v_n v_n^*``."""
    values = np.asarray(f(dec.eigenvalues))
    if values.ndim == 0:
        values = np.full(dec.dim, values)
    v = dec.eigenvectors
    return (v * values) @ v.conj().T


class _Resolvent:
    """``(z - H)^{-1}`` by banded LU, or dense LU when the band is wide."""

    def __init__(self, H: OperatorMatrix) -> None:
        self.dim = H.dim
        self.half = int(H.flat_bandwidth or 0)
        self.banded = 4 * self.half < self.dim
        self.identity = np.eye(self.dim, dtype=complex)
        if self.banded:
            self.ab = -H.lapack_bands()
        else:
            self.dense = H.dense

    def __call__(self, z: complex) -> ComplexMatrix:
        if self.banded:
            ab = self.ab.copy()
            ab[self.half] += z
            return scipy.linalg.solve_banded((self.half, self.half), ab, self.identity, check_finite=False)
        return scipy.linalg.solve(z * self.identity - self.dense, self.identity, check_finite=False)


def hs_apply(
    H: OperatorMatrix, ext: AlmostAnalyticExtension, quad: QuadratureGrid | None = None
) -> ComplexMatrix:
    """``chi(H) = -(1/pi) int dbar chi~(z) (z - H)^{-1} dA(z)`` by the midpoint rule.

    Only the upper half plane is visited: the lower node is the conjugate one, with
    conjugate weight and adjoint resolvent, so the sum is ``-(S + S^*)/pi``.
    """
    if not H.hermitian:
        raise NonHermitianError(H.hermitian_deviation)
    quad = quad or QuadratureGrid()
    lo, hi = ext.base.support
    height = 2.0 * ext.y_scale
    hx = (hi - lo) / quad.nx
    hy = 2.0 * height / quad.ny
    xs = lo + (np.arange(quad.nx) + 0.5) * hx
    ys = (np.arange(quad.ny // 2) + 0.5) * hy
    weights = ext.dbar(xs[:, None], ys[None, :]) * hx * hy
    nodes = [(complex(xs[i], ys[j]), complex(weights[i, j])) for i, j in zip(*np.nonzero(weights), strict=True)]
    logger.debug("hs_apply: %d of %d upper nodes carry weight", len(nodes), weights.size)

    resolvent = _Resolvent(H)

    def partial(chunk: list[tuple[complex, complex]]) -> ComplexMatrix:
        acc = np.zeros((H.dim, H.dim), dtype=complex)
        for z, w in chunk:
            acc += w * resolvent(z)
        return acc

    if quad.workers > 1 and len(nodes) > quad.workers:
        size = -(-len(nodes) // quad.workers)
        chunks = [nodes[i : i + size] for i in range(0, len(nodes), size)]
        with ThreadPoolExecutor(max_workers=quad.workers) as pool:
            parts = list(pool.map(partial, chunks))
        total = parts[0]
        for part in parts[1:]:
            total = total + part
    else:
        total = partial(nodes)
    result = -(total + total.conj().T) / np.pi
    return 0.5 * (result + result.conj().T)


class HSCheckResult(BaseModel):
    K: int
    taylor_order: int
    nx: int
    ny: int
    y_scale: float
    max_abs: float
    commutator: float
    refined_max_abs: float | None = None
    refinement_ratio: float | None = None
    decay_exponents: dict[int, float] = Field(default_factory=dict)


def compare_routes(
    H: OperatorMatrix,
    chi: SmoothCutoff,
    N: int = 5,
    quad: QuadratureGrid | None = None,
    refine: bool = False,
    y_scale: float | None = None,
    dec: SpectralDecomposition | None = None,
) -> HSCheckResult:
    """Max-norm gap between ``hs_apply`` and ``eig_apply(chi)``; optionally on a doubled grid too."""
    quad = quad or QuadratureGrid()
    ext = almost_analytic(chi, N) if y_scale is None else almost_analytic(chi, N, y_scale)
    dec = dec or eigendecompose(H)
    exact = eig_apply(dec, chi)
    approx = hs_apply(H, ext, quad)
    gap = float(np.max(np.abs(approx - exact)))
    h = H.dense
    commutator = float(np.max(np.abs(approx @ h - h @ approx)))
    result = HSCheckResult(
        K=H.K,
        taylor_order=N,
        nx=quad.nx,
        ny=quad.ny,
        y_scale=ext.y_scale,
        max_abs=gap,
        commutator=commutator,
    )
    if refine:
        finer = hs_apply(H, ext, quad.doubled())
        refined = float(np.max(np.abs(finer - exact)))
        result.refined_max_abs = refined
        result.refinement_ratio = gap / refined if refined > 0 else float("inf")
    logger.info("hs vs eig at K=%d: max |diff| = %.3e", H.K, gap)
    return result
