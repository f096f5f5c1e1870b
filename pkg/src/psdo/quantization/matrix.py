from __future__ import annotations

import io
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Literal

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

Geometry = Literal["circle", "torus2"]
ComplexMatrix = NDArray[np.complex128]

HERMITIAN_TOLERANCE = 1e-14


def lattice_size(K: int) -> int:
    return 2 * K + 1


def high_frequency_indices(K: int, n: int) -> NDArray[np.intp]:
    """Positions of the modes ``|k| > n`` in the ordering ``-K..K``."""
    k = np.arange(-K, K + 1)
    return np.flatnonzero(np.abs(k) > n)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Finite section of an operator on Fourier modes ``|k| <= K``.

    Circle matrices keep their diagonals in ``bands`` (offset ``j - k`` to the diagonal
    values, ordered by column); the dense array is built on first use. ``flat_bandwidth``
    is the half-bandwidth of the dense array, which for the torus is ``L1 (2K+1) + L2``.
    """

    K: int
    t: float
    bandwidth: int
    geometry: Geometry = "circle"
    bands: Mapping[int, NDArray[np.complex128]] | None = None
    data: ComplexMatrix | None = field(default=None, repr=False)
    flat_bandwidth: int | None = None

    def __post_init__(self) -> None:
        if self.bands is None and self.data is None:
            msg = "OperatorMatrix needs bands or dense data"
            raise ValueError(msg)
        if self.flat_bandwidth is None:
            object.__setattr__(self, "flat_bandwidth", self.bandwidth)
        if self.data is not None and self.data.shape != (self.dim, self.dim):
            msg = f"dense data has shape {self.data.shape}, expected {(self.dim, self.dim)}"
            raise ValueError(msg)

    @classmethod
    def from_bands(
        cls, K: int, t: float, bands: Mapping[int, NDArray[np.complex128]]
    ) -> OperatorMatrix:
        bandwidth = max((abs(d) for d in bands), default=0)
        return cls(K=K, t=t, bandwidth=bandwidth, bands={d: np.asarray(v, dtype=complex) for d, v in bands.items()})

    @classmethod
    def from_dense(
        cls,
        K: int,
        t: float,
        data: ComplexMatrix,
        bandwidth: int,
        geometry: Geometry = "circle",
        flat_bandwidth: int | None = None,
    ) -> OperatorMatrix:
        return cls(
            K=K,
            t=t,
            bandwidth=bandwidth,
            geometry=geometry,
            data=np.asarray(data, dtype=complex),
            flat_bandwidth=flat_bandwidth,
        )

    @property
    def dim(self) -> int:
        n = lattice_size(self.K)
        return n if self.geometry == "circle" else n * n

    @cached_property
    def dense(self) -> ComplexMatrix:
        if self.data is not None:
            return self.data
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for offset, values in (self.bands or {}).items():
            out += np.diag(values, k=-offset)
        return out

    @cached_property
    def hermitian_deviation(self) -> float:
        m = self.dense
        return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0

    @property
    def hermitian(self) -> bool:
        return self.hermitian_deviation <= HERMITIAN_TOLERANCE

    @property
    def nnz(self) -> int:
        if self.bands is not None:
            return int(sum(np.count_nonzero(v) for v in self.bands.values()))
        return int(np.count_nonzero(self.dense))

    def lapack_bands(self) -> NDArray[np.complex128]:
        """Diagonal-ordered form for ``scipy.linalg.solve_banded`` with ``(l, u) = (L, L)``."""
        half = int(self.flat_bandwidth or 0)
        n = self.dim
        ab = np.zeros((2 * half + 1, n), dtype=complex)
        m = self.dense
        for d in range(-half, half + 1):
            diag = np.diagonal(m, offset=-d)
            if d >= 0:
                ab[half + d, : n - d] = diag
            else:
                ab[half + d, -d:] = diag
        return ab

    def restrict(self, K: int) -> OperatorMatrix:
        """Central block on modes ``|k| <= K``."""
        if K > self.K:
            msg = f"cannot restrict K={self.K} to the larger K={K}"
            raise ValueError(msg)
        cut = self.K - K
        n = lattice_size(self.K)
        if self.geometry == "circle":
            block = self.dense[cut : n - cut, cut : n - cut]
        else:
            axis = np.arange(cut, n - cut)
            keep = (axis[:, None] * n + axis[None, :]).reshape(-1)
            block = self.dense[np.ix_(keep, keep)]
        flat = None if self.geometry == "circle" else self.bandwidth * (lattice_size(K) + 1)
        return OperatorMatrix.from_dense(K, self.t, block, self.bandwidth, self.geometry, flat_bandwidth=flat)

    def with_dense(self, data: ComplexMatrix, bandwidth: int | None = None) -> OperatorMatrix:
        return OperatorMatrix.from_dense(
            self.K, self.t, data, self.bandwidth if bandwidth is None else bandwidth, self.geometry
        )

    def to_descriptor(self) -> dict[str, Any]:
        """Compact JSON form ``{K, t, bandwidth, bands: [{offset, values}]}``; values as ``[re, im]``."""
        m = self.dense
        bands = []
        for offset in range(-self.bandwidth, self.bandwidth + 1):
            if self.bands is not None:
                values = self.bands.get(offset)
                if values is None:
                    continue
            else:
                values = np.diagonal(m, offset=-offset)
            bands.append({"offset": offset, "values": [[float(v.real), float(v.imag)] for v in values]})
        return {"K": self.K, "t": self.t, "bandwidth": self.bandwidth, "geometry": self.geometry, "bands": bands}

    def to_csv(self) -> str:
        buffer = io.StringIO()
        # + 0.0 turns -0.0 into 0.0
        for row in self.dense + 0.0:
            buffer.write(",".join(f"{v.real:.16e}{v.imag:+.16e}j" for v in row))
            buffer.write("\n")
        return buffer.getvalue()


def commutator_i(A: OperatorMatrix, H: OperatorMatrix) -> OperatorMatrix:
    """``i(AH - HA)``; Hermitian inputs give a symmetrized Hermitian output."""
    if A.K != H.K or A.geometry != H.geometry:
        msg = f"dimension mismatch: K={A.K}/{A.geometry} vs K={H.K}/{H.geometry}"
        raise ValueError(msg)
    a, h = A.dense, H.dense
    out = 1j * (a @ h - h @ a)
    if A.hermitian and H.hermitian:
        out = 0.5 * (out + out.conj().T)
    bandwidth = A.bandwidth + H.bandwidth
    flat = int(A.flat_bandwidth or 0) + int(H.flat_bandwidth or 0)
    return OperatorMatrix.from_dense(A.K, H.t, out, bandwidth, A.geometry, flat_bandwidth=flat)


def op_norm(M: OperatorMatrix) -> float:
    """Spectral norm; Hermitian matrices use their eigenvalues."""
    if M.dim == 0:
        return 0.0
    if M.hermitian:
        eigs = scipy.linalg.eigvalsh(M.dense)
        return float(np.max(np.abs(eigs)))
    return float(scipy.linalg.svdvals(M.dense)[0])


def compressed_norm(matrix: ComplexMatrix, K: int, n: int) -> float:
    """``||P_{>n} M P_{>n}||`` for a circle matrix on modes ``-K..K``."""
    idx = high_frequency_indices(K, n)
    if idx.size == 0:
        return 0.0
    block = matrix[np.ix_(idx, idx)]
    if not np.any(block):
        return 0.0
    return float(scipy.linalg.svdvals(block)[0])
