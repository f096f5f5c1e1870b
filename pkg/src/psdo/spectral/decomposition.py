from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from psdo.errors import EigenResidualError, NonHermitianError
from psdo.quantization.matrix import Geometry, OperatorMatrix

logger = logging.getLogger(__name__)

LOCALIZATION_FRACTION = 0.05
# relative to op_norm(H)
RESIDUAL_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenpairs of a Hermitian finite section, eigenvalues ascending."""

    eigenvalues: NDArray[np.float64]
    eigenvectors: NDArray[np.complex128]
    residual: float
    K: int
    geometry: Geometry = "circle"

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.size)

    def weights(self, u: ArrayLike) -> NDArray[np.float64]:
        """``|<v_n, u>|^2`` for every eigenvector."""
        overlaps = self.eigenvectors.conj().T @ np.asarray(u, dtype=complex)
        return np.abs(overlaps) ** 2

    def localization(self, index: int) -> float:
        return localization_score(self.eigenvectors[:, index])

    def localizations(self) -> NDArray[np.float64]:
        return np.array([self.localization(i) for i in range(self.dim)])


def localization_score(vector: ArrayLike, fraction: float = LOCALIZATION_FRACTION) -> float:
    """Share of the squared norm carried by the top ``fraction`` of Fourier modes."""
    mass = np.abs(np.asarray(vector, dtype=complex)) ** 2
    total = float(mass.sum())
    if total == 0.0:
        return 0.0
    top = max(1, math.ceil(fraction * mass.size))
    return float(np.sort(mass)[::-1][:top].sum() / total)


def eigendecompose(H: OperatorMatrix, residual_tol: float = RESIDUAL_TOLERANCE) -> SpectralDecomposition:
    """Full Hermitian eigensolve; diagonal matrices skip LAPACK.

    Raises ``EigenResidualError`` when ``max ||Hv - lambda v|| > residual_tol * ||H||``.
    """
    if not H.hermitian:
        raise NonHermitianError(H.hermitian_deviation)
    m = H.dense
    off_diagonal = m - np.diag(np.diag(m))
    if not np.any(off_diagonal):
        diagonal = np.diag(m).real
        order = np.argsort(diagonal, kind="stable")
        eigenvalues = diagonal[order]
        eigenvectors = np.eye(H.dim, dtype=complex)[:, order]
    else:
        eigenvalues, eigenvectors = scipy.linalg.eigh(m)
    residual = float(np.max(np.linalg.norm(m @ eigenvectors - eigenvectors * eigenvalues, axis=0))) if H.dim else 0.0
    logger.debug("eigendecompose K=%d dim=%d residual=%.2e", H.K, H.dim, residual)
    bound = residual_tol * float(np.max(np.abs(eigenvalues), initial=0.0))
    if residual > bound:
        logger.error("eigendecompose K=%d: residual %.2e above %.2e", H.K, residual, bound)
        raise EigenResidualError(residual, bound)
    return SpectralDecomposition(
        eigenvalues=np.asarray(eigenvalues, dtype=float),
        eigenvectors=np.asarray(eigenvectors, dtype=complex),
        residual=residual,
        K=H.K,
        geometry=H.geometry,
    )

