from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from itertools import pairwise
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, Field

from psdo.quantization.circle import quantize_circle
from psdo.spectral.decomposition import SpectralDecomposition, eigendecompose
from psdo.symbols.analysis import EssentialSpectrumPrediction
from psdo.symbols.circle import CircleSymbol

logger = logging.getLogger(__name__)

Label = Literal["band", "discrete", "embedded-candidate", "unclassified"]

PERSISTENT_LOCALIZATION = 0.9


class SpectrumEntry(BaseModel):
    value: float
    label: Label
    localization: float
    persistent: bool = False


class SpectrumReport(BaseModel):
    K: int
    band_tol: float
    entries: list[SpectrumEntry]

    def values(self, label: Label) -> list[float]:
        return [e.value for e in self.entries if e.label == label]

    def counts(self) -> dict[str, int]:
        out = {"band": 0, "discrete": 0, "embedded-candidate": 0, "unclassified": 0}
        for entry in self.entries:
            out[entry.label] += 1
        return out


class PersistentEigenvalue(BaseModel):
    value: float
    localization: float
    multiplicity: int = 1
    values_per_K: dict[int, float] = Field(default_factory=dict)


class StabilityResult(BaseModel):
    K_list: list[int]
    match_tol: float
    persistent: list[PersistentEigenvalue]

    @property
    def values(self) -> list[float]:
        return [p.value for p in self.persistent]


class BandCoverage(BaseModel):
    """Directed distances between eigenvalues and the predicted bands."""

    containment: float
    coverage: float
    hausdorff: float


def default_match_tol(K_max: int) -> float:
    return 0.1 / K_max


def classify_spectrum(
    dec: SpectralDecomposition,
    pred: EssentialSpectrumPrediction,
    band_tol: float = 1e-2,
    persistent: Sequence[float] = (),
    match_tol: float | None = None,
) -> SpectrumReport:
    """Label each eigenvalue ``band`` (near the predicted intervals) or ``discrete``.

    Band eigenvalues that match a persistent value within ``match_tol`` become
    ``embedded-candidate``.
    """
    tol = default_match_tol(dec.K) if match_tol is None else match_tol
    anchors = np.asarray(sorted(persistent), dtype=float)
    entries = []
    for index, value in enumerate(dec.eigenvalues):
        v = float(value)
        is_persistent = bool(anchors.size and np.min(np.abs(anchors - v)) <= tol)
        label: Label = "discrete"
        if pred.contains(v, band_tol):
            label = "embedded-candidate" if is_persistent else "band"
        entries.append(
            SpectrumEntry(value=v, label=label, localization=dec.localization(index), persistent=is_persistent)
        )
    return SpectrumReport(K=dec.K, band_tol=band_tol, entries=entries)


def unclassified_spectrum(dec: SpectralDecomposition) -> SpectrumReport:
    """Eigenvalues with localization only, for sections without a band prediction (the torus)."""
    entries = [
        SpectrumEntry(value=float(v), label="unclassified", localization=dec.localization(i))
        for i, v in enumerate(dec.eigenvalues)
    ]
    return SpectrumReport(K=dec.K, band_tol=0.0, entries=entries)


def _clusters(values: np.ndarray, tol: float) -> list[list[int]]:
    groups: list[list[int]] = []
    for i in np.argsort(values, kind="stable"):
        if groups and values[i] - values[groups[-1][-1]] <= tol:
            groups[-1].append(int(i))
        else:
            groups.append([int(i)])
    return groups


def decompose_many(a: CircleSymbol, t: float, K_list: Sequence[int], jobs: int = 1) -> list[SpectralDecomposition]:
    def solve(K: int) -> SpectralDecomposition:
        return eigendecompose(quantize_circle(a, K, t))

    if jobs <= 1:
        return [solve(K) for K in K_list]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(solve, K_list))


def truncation_stability(
    a: CircleSymbol,
    t: float = 0.5,
    K_list: Sequence[int] = (64, 128, 256),
    match_tol: float | None = None,
    jobs: int = 1,
    decompositions: Sequence[SpectralDecomposition] | None = None,
) -> StabilityResult:
    """Eigenvalues present at every K within ``match_tol`` and localized at the largest K."""
    ks = list(K_list)
    if len(ks) < 3:
        msg = f"K_list needs at least 3 sizes, got {ks}"
        raise ValueError(msg)
    if any(b <= a_ for a_, b in pairwise(ks)):
        msg = f"K_list must be strictly ascending, got {ks}"
        raise ValueError(msg)
    tol = default_match_tol(ks[-1]) if match_tol is None else match_tol
    decs = list(decompositions) if decompositions is not None else decompose_many(a, t, ks, jobs)

    top = decs[-1]
    localization = top.localizations()
    persistent: list[PersistentEigenvalue] = []
    for group in _clusters(top.eigenvalues, tol):
        best = max(group, key=lambda i: localization[i])
        if localization[best] <= PERSISTENT_LOCALIZATION:
            continue
        value = float(top.eigenvalues[best])
        matched: dict[int, float] = {ks[-1]: value}
        for K, dec in zip(ks[:-1], decs[:-1], strict=True):
            nearest = int(np.argmin(np.abs(dec.eigenvalues - value)))
            if abs(dec.eigenvalues[nearest] - value) > tol:
                break
            matched[K] = float(dec.eigenvalues[nearest])
        else:
            persistent.append(
                PersistentEigenvalue(
                    value=value,
                    localization=float(localization[best]),
                    multiplicity=len(group),
                    values_per_K=dict(sorted(matched.items())),
                )
            )
    logger.info("truncation stability over K=%s: %d persistent value(s)", ks, len(persistent))
    return StabilityResult(K_list=ks, match_tol=tol, persistent=persistent)


def band_coverage(eigenvalues: ArrayLike, intervals: Sequence[tuple[float, float]]) -> BandCoverage:
    """Containment (eigenvalues to bands), coverage (bands to eigenvalues) and their max."""
    eigs = np.sort(np.asarray(eigenvalues, dtype=float))
    if eigs.size == 0:
        return BandCoverage(containment=0.0, coverage=float("inf"), hausdorff=float("inf"))

    def to_bands(v: float) -> float:
        return min(max(lo - v, v - hi, 0.0) for lo, hi in intervals)

    def to_eigs(v: float) -> float:
        return float(np.min(np.abs(eigs - v)))

    containment = max(to_bands(float(v)) for v in eigs)
    coverage = 0.0
    midpoints = 0.5 * (eigs[1:] + eigs[:-1])
    for lo, hi in intervals:
        candidates = [lo, hi, *(m for m in midpoints if lo <= m <= hi)]
        coverage = max(coverage, max(to_eigs(float(c)) for c in candidates))
    return BandCoverage(containment=containment, coverage=coverage, hausdorff=max(containment, coverage))
