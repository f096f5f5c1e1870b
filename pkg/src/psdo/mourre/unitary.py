"""Positive-commutator checks for unitary quantizations ``U = Op^w(a)`` with unimodular limits."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import bisect

from psdo.errors import CriticalIntervalError
from psdo.mourre.models import MourreReport, UnitaryExtras, verdict_for
from psdo.mourre.selfadjoint import compression_levels, lambda_min_table
from psdo.quantization import compressed_norm, quantize_circle
from psdo.symbols import (
    CircleSymbol,
    DirectionalLimits,
    angular_distance,
    critical_points,
    directional_limits,
    unitary_conjugate_symbol,
    unitary_critical_set,
)
from psdo.symbols.conjugate import UNIMODULAR_TOLERANCE, require_unimodular

logger = logging.getLogger(__name__)

ComplexMatrix = NDArray[np.complex128]


def _central_block(m: ComplexMatrix, pad: int, K: int) -> ComplexMatrix:
    cut = pad - K
    return m[cut : m.shape[0] - cut, cut : m.shape[1] - cut]


def in_arc(theta: ArrayLike, arc: tuple[float, float]) -> NDArray[np.bool_]:
    """Membership in the closed counter-clockwise arc from ``arc[0]`` to ``arc[1]``."""
    start, stop = arc
    offset = np.mod(np.asarray(theta, dtype=float) - start, 2.0 * np.pi)
    return offset <= stop - start


def _check_arc(arc: tuple[float, float]) -> None:
    start, stop = arc
    if not 0.0 < stop - start < 2.0 * np.pi:
        msg = f"arc must satisfy 0 < theta2 - theta1 < 2 pi, got ({start}, {stop})"
        raise ValueError(msg)


def unitarity_defect(a: CircleSymbol, K: int, n: int, tol: float = UNIMODULAR_TOLERANCE) -> float:
    """``||P_{>n} (U* U - I) P_{>n}||`` with ``U*U`` taken from a section padded by the bandwidth."""
    require_unimodular(directional_limits(a), tol)
    if n >= K:
        msg = f"n={n} must be smaller than K={K}"
        raise ValueError(msg)
    pad = K + a.bandwidth
    u = quantize_circle(a, pad).dense
    gram = _central_block(u.conj().T @ u, pad, K)
    defect = compressed_norm(gram - np.eye(gram.shape[0]), K, n)
    logger.debug("unitarity defect K=%d n=%d: %.3e", K, n, defect)
    return defect


def arc_localization_constant(
    limits: DirectionalLimits, arc: tuple[float, float], refine_tol: float = 1e-10
) -> float:
    """``min |d_x a0(x, +-1)|^2`` over ``{x : arg a0(x, +-1) in arc}``; 0 when that set is empty."""
    x = limits.grid
    h = 1.0 / limits.n_grid
    start, stop = arc
    best = np.inf
    for sign in (1, -1):
        a0 = limits.direction(sign)
        deriv = a0.derivative()
        phase = np.angle(a0(x))
        inside = in_arc(phase, arc)
        if inside.any():
            best = min(best, float(np.min(np.abs(deriv(x[inside])) ** 2)))
        # the preimage boundary lies between grid points
        for edge in (start, stop):
            values = np.angle(a0(x) * np.exp(-1j * edge))
            following = np.roll(values, -1)
            # sign changes through 0, not the branch cut at +-pi
            crossings = (values * following < 0) & (np.abs(values - following) < np.pi)
            for i in np.flatnonzero(crossings):
                root = bisect(
                    lambda s, a0=a0, edge=edge: float(np.angle(a0(s) * np.exp(-1j * edge))),
                    x[i],
                    x[i] + h,
                    xtol=refine_tol,
                )
                best = min(best, float(abs(deriv(root)) ** 2))
        slope = (deriv * deriv.conj()).hermitian_symmetrized()
        for point in critical_points(slope, limits.n_grid, refine_tol).points:
            if bool(in_arc(np.angle(a0(point)), arc)):
                best = min(best, float(slope(point).real))
    return 0.0 if not np.isfinite(best) else max(best, 0.0)


def _arc_metrics(eigen_angles: NDArray[np.float64], predicted: NDArray[np.float64]) -> tuple[float, float]:
    """Directed angular distances predicted -> eigen-angles and eigen-angles -> predicted."""
    if eigen_angles.size == 0 or predicted.size == 0:
        return float("inf"), float("inf")
    table = angular_distance(predicted[:, None], eigen_angles[None, :])
    return float(np.max(np.min(table, axis=1))), float(np.max(np.min(table, axis=0)))


def mourre_check_unitary(
    a: CircleSymbol,
    arc: tuple[float, float],
    K: int,
    n_grid: int = 2048,
    refine_tol: float = 1e-10,
    tol: float = UNIMODULAR_TOLERANCE,
) -> MourreReport:
    """``E C E - C E`` with ``C = U*(AU - UA)`` and ``E`` the arc projection of the polar factor of ``U_K``.

    The polar factor ``W`` is the unitary closest to the truncated ``U_K``; its Schur
    vectors give the spectral projection onto eigen-angles in ``arc``.
    """
    _check_arc(arc)
    limits = directional_limits(a, n_grid)
    require_unimodular(limits, tol)
    critical = unitary_critical_set(a, n_grid, refine_tol, tol)
    hits = [angle for angle in critical.angles if bool(in_arc(angle, arc))]
    if hits:
        raise CriticalIntervalError(arc, hits)

    b = unitary_conjugate_symbol(a, tol=tol, limits=limits)
    pad = K + a.bandwidth + max(a.bandwidth, b.bandwidth)
    u_pad = quantize_circle(a, pad).dense
    a_pad = quantize_circle(b, pad).dense
    commutator = _central_block(u_pad.conj().T @ (a_pad @ u_pad - u_pad @ a_pad), pad, K)
    commutator = 0.5 * (commutator + commutator.conj().T)

    u_k = _central_block(u_pad, pad, K)
    w, _ = scipy.linalg.polar(u_k)
    schur_form, vectors = scipy.linalg.schur(w, output="complex")
    eigenvalues = np.diag(schur_form)
    angles = np.angle(eigenvalues)
    selected = in_arc(angles, arc)
    basis = vectors[:, selected]
    E = basis @ basis.conj().T

    C = arc_localization_constant(limits, arc, refine_tol)
    G = E @ commutator @ E - C * E
    G = 0.5 * (G + G.conj().T)
    table = lambda_min_table(G, K, compression_levels(K))
    verdict, monotone = verdict_for(table, C)

    predicted = np.concatenate([np.angle(limits.samples(sign)) for sign in (1, -1)])
    coverage, containment = _arc_metrics(angles, predicted)
    extras = UnitaryExtras(
        arc=arc,
        polar_distance=float(scipy.linalg.svdvals(u_k - w)[0]),
        polar_circle_distance=float(np.max(np.abs(np.abs(eigenvalues) - 1.0))),
        truncated_circle_distance=float(np.max(np.abs(np.abs(scipy.linalg.eigvals(u_k)) - 1.0))),
        arc_coverage=coverage,
        arc_containment=containment,
        arc_hausdorff=max(coverage, containment),
        eigenvalues_in_arc=int(np.count_nonzero(selected)),
        critical_angles=critical.angles,
    )
    logger.info(
        "unitary mourre arc (%g, %g) at K=%d: C=%.6g, lambda_min(K/2)=%.3e, %s",
        arc[0],
        arc[1],
        K,
        C,
        table[-1].value,
        verdict,
    )
    return MourreReport(
        K=K,
        interval=arc,
        C=C,
        lambda_min=table,
        cutoff=f"spectral projection of the polar factor onto the arc ({arc[0]:g}, {arc[1]:g})",
        route="polar",
        verdict=verdict,
        monotone=monotone,
        unitary_extras=extras,
    )
