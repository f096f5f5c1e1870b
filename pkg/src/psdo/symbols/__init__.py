from psdo.symbols.analysis import (
    EssentialSpectrumPrediction,
    SymbolClassEstimate,
    UnitaryCriticalSet,
    angular_distance,
    critical_points,
    estimate_symbol_class,
    localization_constant,
    predict_essential_spectrum,
    symbol_range_samples,
    unitary_critical_set,
)
from psdo.symbols.circle import (
    CircleSymbol,
    DirectionalLimits,
    TrigPolynomial,
    directional_limits,
    evaluate,
    fourier_project,
)
from psdo.symbols.conjugate import mourre_conjugate_symbol, unitary_conjugate_symbol
from psdo.symbols.grammar import parse_profile
from psdo.symbols.profile import XiProfile, bump, const, dirstep, jbracket, xi
from psdo.symbols.torus import TorusSymbol2D

__all__ = [
    "CircleSymbol",
    "DirectionalLimits",
    "EssentialSpectrumPrediction",
    "SymbolClassEstimate",
    "TorusSymbol2D",
    "TrigPolynomial",
    "UnitaryCriticalSet",
    "XiProfile",
    "angular_distance",
    "bump",
    "const",
    "critical_points",
    "directional_limits",
    "dirstep",
    "estimate_symbol_class",
    "evaluate",
    "fourier_project",
    "jbracket",
    "localization_constant",
    "mourre_conjugate_symbol",
    "parse_profile",
    "predict_essential_spectrum",
    "symbol_range_samples",
    "unitary_conjugate_symbol",
    "unitary_critical_set",
    "xi",
]
