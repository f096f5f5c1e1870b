from psdo.spectral.classify import (
    BandCoverage,
    SpectrumReport,
    StabilityResult,
    band_coverage,
    classify_spectrum,
    decompose_many,
    truncation_stability,
    unclassified_spectrum,
)
from psdo.spectral.decomposition import SpectralDecomposition, eigendecompose, localization_score
from psdo.spectral.diagnostics import DensityResult, probe_vector, spectral_density, survival_average

__all__ = [
    "BandCoverage",
    "DensityResult",
    "SpectralDecomposition",
    "SpectrumReport",
    "StabilityResult",
    "band_coverage",
    "classify_spectrum",
    "decompose_many",
    "eigendecompose",
    "localization_score",
    "probe_vector",
    "spectral_density",
    "survival_average",
    "truncation_stability",
    "unclassified_spectrum",
]
