"""Conjugate symbols ``b = phi(x, sign xi) * xi * (1 - chi0(xi))`` for Mourre estimates."""

from __future__ import annotations

import logging

import numpy as np

from psdo.errors import UnimodularityError
from psdo.symbols.circle import CircleSymbol, DirectionalLimits, TrigPolynomial, directional_limits
from psdo.symbols.profile import Bump, XiProfile, bump, dirstep, xi

logger = logging.getLogger(__name__)

DEFAULT_LOW_CUTOFF = bump(0.0, 0.5, 1.0)
DEFAULT_BLEND_WIDTH = 1.0
UNIMODULAR_TOLERANCE = 1e-8

# coefficients of products below this fraction of the largest one are dropped
_PRUNE_RELATIVE = 1e-14


def _blend(
    plus: TrigPolynomial, minus: TrigPolynomial, low_cutoff: Bump, blend_width: float
) -> CircleSymbol:
    high = xi * (1 - low_cutoff)
    to_plus = dirstep(1.0, 0.0, blend_width)
    to_minus = dirstep(0.0, 1.0, blend_width)
    coeffs: dict[int, XiProfile] = {}
    for mode in sorted(set(plus.coeffs) | set(minus.coeffs)):
        cp, cm = plus.coefficient(mode), minus.coefficient(mode)
        if cp == 0 and cm == 0:
            continue
        if cp == cm:
            coeffs[mode] = cp * high
        else:
            coeffs[mode] = (cp * to_plus + cm * to_minus) * high
    return CircleSymbol(coeffs, order=1.0)


def _pruned(p: TrigPolynomial) -> TrigPolynomial:
    scale = max((abs(c) for c in p.coeffs.values()), default=0.0)
    return TrigPolynomial({mode: c for mode, c in p.coeffs.items() if abs(c) > _PRUNE_RELATIVE * scale})


def mourre_conjugate_symbol(
    a: CircleSymbol,
    low_cutoff: Bump = DEFAULT_LOW_CUTOFF,
    blend_width: float = DEFAULT_BLEND_WIDTH,
    limits: DirectionalLimits | None = None,
) -> CircleSymbol:
    """``b = d_x a0(x, sign xi) xi (1 - chi0)``, real-valued, order 1."""
    a.require_real()
    limits = limits or directional_limits(a)
    slopes = {sign: limits.direction(sign).hermitian_symmetrized().derivative() for sign in (1, -1)}
    return _blend(
        slopes[1].hermitian_symmetrized(), slopes[-1].hermitian_symmetrized(), low_cutoff, blend_width
    )


def unimodular_deviation(limits: DirectionalLimits) -> float:
    return max(float(np.max(np.abs(np.abs(limits.samples(sign)) - 1.0))) for sign in (1, -1))


def require_unimodular(limits: DirectionalLimits, tol: float = UNIMODULAR_TOLERANCE) -> None:
    deviation = unimodular_deviation(limits)
    if deviation > tol:
        raise UnimodularityError(deviation, tol)


def unitary_conjugate_symbol(
    a: CircleSymbol,
    low_cutoff: Bump = DEFAULT_LOW_CUTOFF,
    blend_width: float = DEFAULT_BLEND_WIDTH,
    tol: float = UNIMODULAR_TOLERANCE,
    limits: DirectionalLimits | None = None,
) -> CircleSymbol:
    """``b = i a0 d_x conj(a0) xi (1 - chi0)``; real because ``|a0| = 1``."""
    limits = limits or directional_limits(a)
    require_unimodular(limits, tol)
    phis = {}
    for sign in (1, -1):
        a0 = limits.direction(sign)
        phi = (a0 * a0.conj().derivative()).scaled(1j)
        phis[sign] = _pruned(phi.hermitian_symmetrized())
    logger.debug("unitary conjugate bandwidths: +%d / -%d", phis[1].bandwidth, phis[-1].bandwidth)
    return _blend(phis[1], phis[-1], low_cutoff, blend_width)
