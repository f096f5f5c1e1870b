"""Named acceptance suites; each check compares one measured quantity against a fixed tolerance."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from typing import Literal

import numpy as np
from pydantic import BaseModel
from scipy.special import jv

from psdo.app.presets import build_symbol
from psdo.app.settings import SymbolConfig
from psdo.calculus import QuadratureGrid, almost_analytic, build_cutoff, compare_routes
from psdo.mourre import commutator_symbol_residual, mourre_check_selfadjoint, mourre_check_unitary, unitarity_defect
from psdo.quantization import op_norm, order_gap_norm, quantize_circle, quantize_torus2_weyl, torus_index
from psdo.spectral import (
    band_coverage,
    eigendecompose,
    probe_vector,
    spectral_density,
    survival_average,
    truncation_stability,
)
from psdo.symbols import CircleSymbol, TorusSymbol2D, predict_essential_spectrum
from psdo.symbols.profile import default_xi_probes

logger = logging.getLogger(__name__)

SuiteName = Literal[
    "embedded", "bands", "stability", "mourre", "calculus", "torus", "ordergap", "unitary", "density", "all"
]

# below this a decaying norm is rounding noise and its ratio carries no information
DECAY_FLOOR = 1e-10
DECAY_RATIO = 1.6
NORM_BOUND_SLACK = 1e-9


class Check(BaseModel):
    suite: str
    name: str
    value: float
    bound: str
    passed: bool


class SuiteReport(BaseModel):
    suite: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def breaches(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _at_most(suite: str, name: str, value: float, limit: float) -> Check:
    return Check(suite=suite, name=name, value=value, bound=f"<= {limit:g}", passed=bool(value <= limit))


def _at_least(suite: str, name: str, value: float, limit: float) -> Check:
    return Check(suite=suite, name=name, value=value, bound=f">= {limit:g}", passed=bool(value >= limit))


def _decays(suite: str, name: str, coarse: float, fine: float) -> Check:
    """``coarse / fine >= 1.6``, or ``fine`` already at the rounding floor."""
    if fine <= DECAY_FLOOR:
        return Check(suite=suite, name=name, value=fine, bound=f"<= {DECAY_FLOOR:g} (floor)", passed=True)
    return _at_least(suite, name, coarse / fine, DECAY_RATIO)


def _circle(preset: str, **kwargs: float) -> CircleSymbol:
    symbol = build_symbol(SymbolConfig.model_validate({"preset": preset, **kwargs}))
    if not isinstance(symbol, CircleSymbol):
        msg = f"preset '{preset}' is not a circle symbol"
        raise TypeError(msg)
    return symbol


def suite_embedded() -> list[Check]:
    a = _circle("example13")
    checks = []
    for K in (8, 64, 256):
        H = quantize_circle(a, K)
        m = H.dense
        zero_cross = float(max(np.max(np.abs(m[K, :])), np.max(np.abs(m[:, K]))))
        dec = eigendecompose(H)
        index = int(np.argmin(np.abs(dec.eigenvalues)))
        checks += [
            _at_most("embedded", f"row/column 0 at K={K}", zero_cross, 1e-14),
            _at_most("embedded", f"|lambda| nearest 0 at K={K}", float(abs(dec.eigenvalues[index])), 1e-12),
            _at_least("embedded", f"overlap with e_0 at K={K}", float(abs(dec.eigenvectors[K, index])), 1 - 1e-10),
        ]
    return checks


def suite_bands() -> list[Check]:
    K = 256
    cosine = _circle("cosine")
    eigs = eigendecompose(quantize_circle(cosine, K)).eigenvalues
    oracle = np.sort(np.cos(np.arange(1, 2 * K + 2) * np.pi / (2 * K + 2)))
    cosine_cover = band_coverage(eigs, predict_essential_spectrum(cosine).intervals)

    two = _circle("two_direction")
    K2 = 512
    two_eigs = eigendecompose(quantize_circle(two, K2)).eigenvalues
    two_cover = band_coverage(two_eigs, predict_essential_spectrum(two).intervals)
    return [
        _at_most("bands", f"cosine vs Toeplitz eigenvalues at K={K}", float(np.max(np.abs(eigs - oracle))), 1e-10),
        _at_most("bands", f"cosine Hausdorff distance at K={K}", cosine_cover.hausdorff, 0.05),
        _at_most("bands", f"two-direction band coverage at K={K2}", two_cover.coverage, 0.1),
    ]


def suite_stability() -> list[Check]:
    ks = (64, 128, 256)
    tol = 0.1 / ks[-1]
    embedded = truncation_stability(_circle("example13"), 0.5, ks, tol).values
    cosine = truncation_stability(_circle("cosine"), 0.5, ks, tol).values
    return [
        Check(
            suite="stability",
            name="example13 persistent set is {0}",
            value=float(len(embedded)),
            bound="== 1 value within 1e-10 of 0",
            passed=len(embedded) == 1 and abs(embedded[0]) <= 1e-10,
        ),
        Check(
            suite="stability",
            name="cosine persistent set is empty",
            value=float(len(cosine)),
            bound="== 0",
            passed=not cosine,
        ),
    ]


def suite_mourre() -> list[Check]:
    a = _circle("example13")
    report = mourre_check_selfadjoint(a, (-0.5, 0.5), (-0.8, 0.8), 512)
    expected = 4 * math.pi**2 * (1 - 0.64)
    coarse = commutator_symbol_residual(a, 256)
    fine = report.residual if report.residual is not None else commutator_symbol_residual(a, 512)
    return [
        _decays("mourre", "commutator residual r(256)/r(512)", coarse, fine),
        _at_most("mourre", "relative error of C", abs(report.C - expected) / expected, 0.01),
        _at_least("mourre", "lambda_min(K/2) / C", report.lambda_min[-1].value / report.C, -0.05),
    ]


def suite_calculus() -> list[Check]:
    a = _circle("example13")
    chi = build_cutoff(-0.5, 0.5, -0.8, 0.8)
    result = compare_routes(quantize_circle(a, 128), chi, 5, QuadratureGrid(), refine=True)
    checks = [_at_most("calculus", "max |hs - eig| at K=128, N=5", result.max_abs, 1e-6)]
    refined = result.refined_max_abs if result.refined_max_abs is not None else result.max_abs
    if refined <= DECAY_FLOOR:
        checks.append(_at_most("calculus", "refined discrepancy (floor)", refined, DECAY_FLOOR))
    else:
        checks.append(_at_least("calculus", "discrepancy reduction on the doubled grid", result.max_abs / refined, 4.0))
    for n in (1, 3, 5):
        slope = almost_analytic(chi, n).decay_exponent()
        checks.append(_at_least("calculus", f"dbar decay exponent for N={n}", slope, n - 0.5))
    return checks


def suite_torus() -> list[Check]:
    symbol = build_symbol(SymbolConfig(preset="example14"))
    if not isinstance(symbol, TorusSymbol2D):
        msg = "example14 must be a 2-torus symbol"
        raise TypeError(msg)
    K = 8
    H = quantize_torus2_weyl(symbol, K)
    origin = torus_index(K, 0, 0)
    dec = eigendecompose(H)
    index = int(np.argmin(np.abs(dec.eigenvalues)))
    return [
        _at_most("torus", "column (0,0)", float(np.max(np.abs(H.dense[:, origin]))), 1e-14),
        _at_most("torus", "|lambda| nearest 0", float(abs(dec.eigenvalues[index])), 1e-12),
        _at_least("torus", "overlap with e_(0,0)", float(abs(dec.eigenvectors[origin, index])), 1 - 1e-12),
    ]


def suite_ordergap() -> list[Check]:
    a = _circle("example13")
    checks = [_decays("ordergap", "order gap n=64 / n=128 at K=512", order_gap_norm(a, 512, 64), order_gap_norm(a, 512, 128))]
    bound = a.sup_bound()
    for K in (16, 64, 256, 1024):
        norm = op_norm(quantize_circle(a, K))
        checks.append(_at_most("ordergap", f"op norm minus coefficient bound at K={K}", norm - bound, NORM_BOUND_SLACK))
    return checks


def suite_unitary() -> list[Check]:
    a = _circle("scattering", c=1.0, projection_modes=12)
    probes = default_xi_probes()
    z = probes / np.sqrt(1.0 + probes**2)
    oracle_gap = max(float(np.max(np.abs(a.coefficient(mode)(probes) - jv(mode, z)))) for mode in range(-12, 13))
    report = mourre_check_unitary(a, (-0.5, 0.5), 512)
    extras = report.unitary_extras
    if extras is None:
        msg = "unitary check returned no arc metrics"
        raise RuntimeError(msg)
    return [
        _at_most("unitary", "projection tail bound", a.tail_bound, 1e-9),
        _at_most("unitary", "coefficients vs Jacobi-Anger", oracle_gap, 1e-9),
        _decays("unitary", "unitarity defect n=64 / n=128 at K=512", unitarity_defect(a, 512, 64), unitarity_defect(a, 512, 128)),
        _at_most(
            "unitary", "polar-factor eigenvalues off the unit circle (Schur check)", extras.polar_circle_distance, 1e-2
        ),
        _at_most("unitary", "arc coverage of |theta| <= 1", extras.arc_coverage, 0.05),
        Check(
            suite="unitary",
            name="unitary Mourre verdict on (-0.5, 0.5)",
            value=report.lambda_min[-1].value,
            bound=f">= {-0.05 * report.C:g}",
            passed=report.passed,
        ),
    ]


def suite_density() -> list[Check]:
    K = 256
    e0 = probe_vector("constant", K)
    embedded = eigendecompose(quantize_circle(_circle("example13"), K))
    eps = 0.01
    peak = spectral_density(embedded, e0, np.linspace(-1.0, 1.0, 201), eps).values[100]

    cosine = _circle("cosine")
    window = np.linspace(-0.5, 0.5, 201)
    coarse_dec = eigendecompose(quantize_circle(cosine, K))
    coarse = spectral_density(coarse_dec, e0, window).values
    fine = spectral_density(eigendecompose(quantize_circle(cosine, 2 * K)), probe_vector("constant", 2 * K), window).values
    return [
        _at_most("density", "rho(0) * pi * eps - 1 for e_0", abs(peak * math.pi * eps - 1.0), 0.1),
        _at_most("density", f"cosine density change K={K} -> {2 * K}", float(np.max(np.abs(fine - coarse) / coarse)), 0.05),
        _at_most("density", "cosine survival average", survival_average(coarse_dec, e0), 0.05),
        _at_most("density", "example13 survival average - 1", abs(survival_average(embedded, e0) - 1.0), 1e-10),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "embedded": suite_embedded,
    "bands": suite_bands,
    "stability": suite_stability,
    "mourre": suite_mourre,
    "calculus": suite_calculus,
    "torus": suite_torus,
    "ordergap": suite_ordergap,
    "unitary": suite_unitary,
    "density": suite_density,
}


def run_suite(name: str) -> list[SuiteReport]:
    key = name.strip().lower()
    names = list(SUITES) if key == "all" else [key]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        msg = f"unknown suite '{name}'; available: {', '.join([*SUITES, 'all'])}"
        raise KeyError(msg)
    reports = []
    for suite in names:
        report = SuiteReport(suite=suite, checks=SUITES[suite]())
        for check in report.breaches:
            logger.error("%s: %s = %.6g violates %s", suite, check.name, check.value, check.bound)
        logger.info("suite %s: %s", suite, "PASS" if report.passed else "FAIL")
        reports.append(report)
    return reports
