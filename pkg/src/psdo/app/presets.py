"""Named symbols with every free construction choice pinned."""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray

from psdo.app.settings import CoefficientConfig, SymbolConfig
from psdo.quantization.matrix import Geometry
from psdo.symbols import CircleSymbol, TorusSymbol2D, fourier_project
from psdo.symbols.conjugate import DEFAULT_BLEND_WIDTH, DEFAULT_LOW_CUTOFF
from psdo.symbols.torus import Component, JBracket2D, radial_bump

Symbol = CircleSymbol | TorusSymbol2D

# chi = bump(0, 1.5 pi, 2 pi) vanishes the (0, +-1) Weyl entries, which sit at xi = +-pi
EXAMPLE13_TEXTS = {
    1: "-0.5j*(1 - bump(0, 1.5*pi, 2*pi))",
    -1: "0.5j*(1 - bump(0, 1.5*pi, 2*pi))",
}
COSINE_TEXTS = {1: "0.5", -1: "0.5"}
DIRSTEP_TEXTS = {0: "dirstep(2, -2, 10)"}
TWO_DIRECTION_TEXTS = {0: "dirstep(0, 3, 1)", 1: "0.5", -1: "0.5"}

TORUS_BUMP_RADII = (4.0, 2.0 * np.pi)
PROJECTION_GRID = 256


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    geometry: Geometry = "circle"
    texts: Mapping[int, str] | None = None
    pinned: Mapping[str, Any] = field(default_factory=dict)
    builder: Callable[[SymbolConfig], Symbol] | None = None

    def build(self, cfg: SymbolConfig) -> Symbol:
        if self.texts is not None:
            return CircleSymbol.from_texts(self.texts, order=cfg.order)
        if self.builder is None:
            msg = f"preset '{self.name}' has neither coefficient texts nor a builder"
            raise ValueError(msg)
        return self.builder(cfg)


def _build_example14(cfg: SymbolConfig) -> TorusSymbol2D:
    """``<D>^{-1} D_2 + 2 sin(2 pi x1) - b^w`` with ``b = 2 sin(2 pi x1) chi(|xi|)``."""
    r_in, r_out = TORUS_BUMP_RADII
    diagonal = Component(2) * JBracket2D(-1.0)
    high = 1.0 - radial_bump(r_in, r_out)
    return TorusSymbol2D({(0, 0): diagonal, (1, 0): -1j * high, (-1, 0): 1j * high})


def scattering_function(c: float) -> Callable[[NDArray[np.float64], NDArray[np.float64]], NDArray[np.complex128]]:
    def f(x: NDArray[np.float64], xi: NDArray[np.float64]) -> NDArray[np.complex128]:
        return np.exp(1j * c * np.sin(2.0 * np.pi * x) * xi / np.sqrt(1.0 + xi**2))

    return f


def _build_scattering(cfg: SymbolConfig) -> CircleSymbol:
    return fourier_project(scattering_function(cfg.c), cfg.projection_modes, PROJECTION_GRID, order=0.0)


_CONJUGATE_PINS = {"conjugate low cutoff": DEFAULT_LOW_CUTOFF.to_text(), "conjugate blend width": DEFAULT_BLEND_WIDTH}

PRESETS: dict[str, Preset] = {
    preset.name: preset
    for preset in (
        Preset(
            name="example13",
            description="sin(2 pi x)(1 - chi(xi)): embedded eigenvalue 0 with eigenvector e_0 inside the band [-1, 1]",
            texts=EXAMPLE13_TEXTS,
            pinned={"chi": "bump(0, 1.5*pi, 2*pi)", **_CONJUGATE_PINS},
        ),
        Preset(
            name="example14",
            description="<D>^{-1} D_2 + 2 sin(2 pi x1) - b^w on the 2-torus: eigenvalue 0 with eigenvector e_(0,0)",
            geometry="torus2",
            pinned={"<xi>": "(1 + |xi|^2)^(1/2)", "chi_2d radii": TORUS_BUMP_RADII},
            builder=_build_example14,
        ),
        Preset(
            name="cosine",
            description="cos(2 pi x): tridiagonal Toeplitz section, band [-1, 1]",
            texts=COSINE_TEXTS,
            pinned=dict(_CONJUGATE_PINS),
        ),
        Preset(
            name="dirstep",
            description="dirstep(2, -2, 10): diagonal symbol with limits +2 and -2",
            texts=DIRSTEP_TEXTS,
            pinned={"dirstep width": 10.0},
        ),
        Preset(
            name="two_direction",
            description="cos(2 pi x) as xi -> +inf, 3 + cos(2 pi x) as xi -> -inf: bands [-1, 1] and [2, 4]",
            texts=TWO_DIRECTION_TEXTS,
            pinned={"dirstep width": 1.0, **_CONJUGATE_PINS},
        ),
        Preset(
            name="scattering",
            description="exp(i c sin(2 pi x) xi / <xi>) projected onto |l| <= L: unitary with unimodular limits",
            builder=_build_scattering,
            pinned={"projection grid": PROJECTION_GRID, "projection tolerance": 1e-9, **_CONJUGATE_PINS},
        ),
    )
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        msg = f"unknown preset '{name}'; available: {', '.join(sorted(PRESETS))}"
        raise KeyError(msg) from None


def expand_preset(cfg: SymbolConfig) -> SymbolConfig:
    """Inline coefficient form of a text-defined preset; other configs are returned unchanged."""
    if cfg.preset is None:
        return cfg
    preset = get_preset(cfg.preset)
    if preset.texts is None:
        return cfg
    coefficients = [CoefficientConfig(mode=mode, profile=text) for mode, text in sorted(preset.texts.items())]
    return SymbolConfig(coefficients=coefficients, order=cfg.order)


def symbol_geometry(cfg: SymbolConfig) -> Geometry:
    return "circle" if cfg.preset is None else get_preset(cfg.preset).geometry


def build_symbol(cfg: SymbolConfig) -> Symbol:
    if cfg.preset is not None:
        return get_preset(cfg.preset).build(cfg)
    coefficients = cfg.coefficients or []
    return CircleSymbol.from_texts({c.mode: c.profile for c in coefficients}, order=cfg.order)


def pinned_values(cfg: SymbolConfig) -> dict[str, Any]:
    if cfg.preset is None:
        return {}
    pins = dict(get_preset(cfg.preset).pinned)
    if cfg.preset == "scattering":
        pins.update({"c": cfg.c, "L": cfg.projection_modes})
    return pins
