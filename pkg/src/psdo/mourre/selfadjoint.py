"""Localized positive-commutator checks for self-adjoint quantizations."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from typing import Literal

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from psdo.calculus import QuadratureGrid, almost_analytic, build_cutoff, eig_apply, hs_apply
from psdo.errors import CriticalIntervalError
from psdo.mourre.models import LambdaMin, MourreReport, verdict_for
from psdo.quantization import WEYL, OperatorMatrix, commutator_i, high_frequency_indices, quantize_circle
from psdo.spectral import eigendecompose
from psdo.symbols import (
    CircleSymbol,
    directional_limits,
    localization_constant,
    mourre_conjugate_symbol,
    predict_essential_spectrum,
)

logger = logging.getLogger(__name__)

ComplexMatrix = NDArray[np.complex128]
CutoffRoute = Literal["eig", "hs"]

MIN_K = 16


def exact_commutator(b: CircleSymbol, a: CircleSymbol, K: int, t: float = WEYL) -> OperatorMatrix:
    """``i[Op(b), Op(a)]`` on modes ``|k| <= K``, computed on a section padded by the band widths."""
    pad = K + max(b.bandwidth, a.bandwidth)
    A = quantize_circle(b, pad, t)
    H = quantize_circle(a, pad, t)
    return commutator_i(A, H).restrict(K)


def lambda_min_table(G: ComplexMatrix, K: int, ns: Iterable[int]) -> list[LambdaMin]:
    """Smallest eigenvalue of ``P_{>n} G P_{>n}`` for each ``n``, ascending in ``n``."""
    table = []
    for n in sorted(set(ns)):
        idx = high_frequency_indices(K, n)
        block = G[np.ix_(idx, idx)]
        value = float(scipy.linalg.eigvalsh(block, subset_by_index=[0, 0])[0]) if idx.size else 0.0
        table.append(LambdaMin(n=n, value=value))
    return table


def compression_levels(K: int) -> tuple[int, int, int]:
    return (K // 8, K // 4, K // 2)


def commutator_symbol_residual(a: CircleSymbol, K: int, commutator: OperatorMatrix | None = None) -> float:
    """Max deviation of ``i[A, H]`` bands from the Fourier coefficients of ``|d_x a0(., sign k)|^2``.

    Entries ``M[k + d, k]`` with ``|d| <= 2L`` and ``K/4 <= |k| <= K/2`` are compared.
    """
    a.require_real()
    if commutator is None:
        commutator = exact_commutator(mourre_conjugate_symbol(a), a, K)
    limits = directional_limits(a)
    targets = {}
    for sign in (1, -1):
        slope = limits.direction(sign).hermitian_symmetrized().derivative()
        targets[sign] = (slope * slope.conj()).hermitian_symmetrized()
    m = commutator.dense
    reach = 2 * a.bandwidth
    worst = 0.0
    half = K // 2
    for k in range(-half, half + 1):
        if 4 * abs(k) < K:
            continue
        target = targets[1 if k > 0 else -1]
        for d in range(-reach, reach + 1):
            if abs(k + d) > K:
                continue
            worst = max(worst, abs(m[k + d + K, k + K] - target.coefficient(d)))
    logger.debug("commutator symbol residual at K=%d: %.3e", K, worst)
    return float(worst)


def mourre_check_selfadjoint(
    a: CircleSymbol,
    interval: tuple[float, float],
    enclosing: tuple[float, float],
    K: int,
    cutoff_order: int = 5,
    route: CutoffRoute = "eig",
    quad: QuadratureGrid | None = None,
    n_grid: int = 2048,
) -> MourreReport:
    """``G = chi(H) i[A, H] chi(H) - C chi(H)^2`` compressed to high frequencies.

    ``chi`` is 1 on ``interval`` and supported in ``enclosing``. ``cutoff_order`` is the
    Taylor order of the almost analytic extension when ``route == "hs"``.
    """
    lo, hi = interval
    outer_lo, outer_hi = enclosing
    chi = build_cutoff(lo, hi, outer_lo, outer_hi)
    prediction = predict_essential_spectrum(a, n_grid)
    hits = prediction.critical_hits(outer_lo, outer_hi)
    if hits:
        raise CriticalIntervalError(enclosing, hits)
    b = mourre_conjugate_symbol(a)
    needed = max(MIN_K, 8 * (a.bandwidth + b.bandwidth))
    if needed > K:
        msg = f"K={K} is too small for the cutoff bandwidth; need K >= {needed}"
        raise ValueError(msg)

    H = quantize_circle(a, K)
    commutator = exact_commutator(b, a, K)
    if route == "hs":
        chi_h = hs_apply(H, almost_analytic(chi, cutoff_order), quad)
    else:
        chi_h = eig_apply(eigendecompose(H), chi)
    C = localization_constant(a, enclosing, n_grid)
    G = chi_h @ commutator.dense @ chi_h - C * (chi_h @ chi_h)
    G = 0.5 * (G + G.conj().T)

    table = lambda_min_table(G, K, compression_levels(K))
    verdict, monotone = verdict_for(table, C)
    residual = commutator_symbol_residual(a, K, commutator)
    logger.info(
        "mourre (%g, %g) at K=%d: C=%.6g, lambda_min(K/2)=%.3e, %s", lo, hi, K, C, table[-1].value, verdict
    )
    return MourreReport(
        K=K,
        interval=(lo, hi),
        enclosing=(outer_lo, outer_hi),
        C=C,
        lambda_min=table,
        residual=residual,
        cutoff=chi.describe(),
        route=route,
        verdict=verdict,
        monotone=monotone,
    )
