from __future__ import annotations

import logging
from collections.abc import Callable, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, Field
from scipy.optimize import bisect, minimize_scalar

from psdo.symbols.circle import CircleSymbol, TrigPolynomial, directional_limits
from psdo.symbols.conjugate import UNIMODULAR_TOLERANCE, require_unimodular

logger = logging.getLogger(__name__)

MIN_GRID = 16
VALUE_MERGE_TOL = 1e-9


class CriticalSet(BaseModel):
    """Critical points of one real periodic function ``p`` on [0, 1)."""

    points: list[float] = Field(default_factory=list)
    values: list[float] = Field(default_factory=list)
    flat_runs: list[tuple[float, float]] = Field(default_factory=list)
    minimum: float
    maximum: float


class EssentialSpectrumPrediction(BaseModel):
    interval_plus: tuple[float, float]
    interval_minus: tuple[float, float]
    critical_set: list[float]
    grid_resolution: int
    critical_points_plus: list[float] = Field(default_factory=list)
    critical_points_minus: list[float] = Field(default_factory=list)

    @property
    def intervals(self) -> list[tuple[float, float]]:
        return [self.interval_plus, self.interval_minus]

    def distance(self, value: float) -> float:
        """Distance from ``value`` to ``interval_plus`` union ``interval_minus``."""
        return min(max(lo - value, value - hi, 0.0) for lo, hi in self.intervals)

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.distance(value) <= tol

    def critical_hits(self, lo: float, hi: float) -> list[float]:
        return [v for v in self.critical_set if lo <= v <= hi]


def _merge_values(values: Sequence[float], tol: float = VALUE_MERGE_TOL) -> list[float]:
    merged: list[float] = []
    for v in sorted(values):
        if merged and abs(v - merged[-1]) <= tol * max(1.0, abs(v)):
            continue
        merged.append(float(v))
    return merged


def _flat_runs(flat: NDArray[np.bool_]) -> list[list[int]]:
    """Maximal runs of consecutive flat grid indices, wrapping around the circle."""
    n = flat.size
    if flat.all():
        return [list(range(n))]
    start = int(np.argmin(flat))  # a non-flat index, so no run straddles the start
    runs: list[list[int]] = []
    current: list[int] = []
    for step in range(1, n + 1):
        i = (start + step) % n
        if flat[i]:
            current.append(i)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


class PeriodicRoots(BaseModel):
    """Isolated roots and flat runs (as grid index lists) of a real periodic function."""

    points: list[float] = Field(default_factory=list)
    flat_runs: list[list[int]] = Field(default_factory=list)


def periodic_roots(func: Callable[[float], float], n_grid: int, refine_tol: float) -> PeriodicRoots:
    """Roots of ``func`` on [0, 1): sign changes on a uniform grid refined by bisection.

    Grid points where ``|func| < refine_tol`` count as roots; two or more consecutive ones
    form a flat run.
    """
    if n_grid < MIN_GRID:
        msg = f"n_grid must be at least {MIN_GRID}, got {n_grid}"
        raise ValueError(msg)
    x = np.arange(n_grid) / n_grid
    fvals = np.array([func(float(s)) for s in x])
    flat = np.abs(fvals) < refine_tol
    points: list[float] = []
    runs: list[list[int]] = []
    for run in _flat_runs(flat):
        if len(run) == 1:
            points.append(float(x[run[0]]))
        else:
            runs.append(run)
    h = 1.0 / n_grid
    for i in range(n_grid):
        j = (i + 1) % n_grid
        if flat[i] or flat[j] or fvals[i] * fvals[j] > 0:
            continue
        points.append(float(bisect(func, x[i], x[i] + h, xtol=refine_tol)) % 1.0)
    return PeriodicRoots(points=sorted(points), flat_runs=runs)


def critical_points(p: TrigPolynomial, n_grid: int = 2048, refine_tol: float = 1e-10) -> CriticalSet:
    """Roots of ``p'`` from sign changes on a uniform grid, refined by bisection.

    Grid points where ``|p'| < refine_tol`` are flat; a run of two or more of them is
    reported as an interval whose common value enters the critical values once.
    """
    deriv = p.derivative()

    def real_p(x: float) -> float:
        return float(p(x).real)

    roots = periodic_roots(lambda s: float(deriv(s).real), n_grid, refine_tol)
    x, values = p.grid(n_grid)
    h = 1.0 / n_grid
    points = list(roots.points)
    crit_values = [real_p(s) for s in points]
    flat_runs: list[tuple[float, float]] = []
    for run in roots.flat_runs:
        flat_runs.append((float(x[run[0]]), float(x[run[-1]])))
        crit_values.append(float(np.mean(values[run].real)))
    # two roots inside one grid cell leave no sign change; the grid extremes catch that case
    lo_i, hi_i = int(np.argmin(values.real)), int(np.argmax(values.real))
    for index, sign in ((lo_i, 1.0), (hi_i, -1.0)):
        grid_value = float(values[index].real)
        best = None if not crit_values else (min(crit_values) if sign > 0 else max(crit_values))
        if best is None or sign * (grid_value - best) < -refine_tol:
            result = minimize_scalar(
                lambda s, sign=sign: sign * real_p(s),
                bounds=(x[index] - h, x[index] + h),
                method="bounded",
                options={"xatol": refine_tol},
            )
            points.append(float(result.x) % 1.0)
            crit_values.append(real_p(float(result.x)))
            logger.debug("grid extreme at x=%.6f was missed by sign changes; refined separately", x[index])

    return CriticalSet(
        points=sorted(points),
        values=_merge_values(crit_values),
        flat_runs=flat_runs,
        minimum=min(crit_values),
        maximum=max(crit_values),
    )


def predict_essential_spectrum(
    a: CircleSymbol, n_grid: int = 2048, refine_tol: float = 1e-10
) -> EssentialSpectrumPrediction:
    """Ranges of ``a(., +1)`` and ``a(., -1)`` and their critical values."""
    if n_grid < MIN_GRID:
        msg = f"n_grid must be at least {MIN_GRID}, got {n_grid}"
        raise ValueError(msg)
    a.require_real()
    limits = directional_limits(a, n_grid)
    sets = {
        sign: critical_points(limits.direction(sign).hermitian_symmetrized(), n_grid, refine_tol) for sign in (1, -1)
    }
    critical = _merge_values([v for s in sets.values() for v in s.values])
    logger.debug("essential spectrum: %d critical values from %d grid points", len(critical), n_grid)
    return EssentialSpectrumPrediction(
        interval_plus=(sets[1].minimum, sets[1].maximum),
        interval_minus=(sets[-1].minimum, sets[-1].maximum),
        critical_set=critical,
        grid_resolution=n_grid,
        critical_points_plus=sets[1].points,
        critical_points_minus=sets[-1].points,
    )


def localization_constant(
    a: CircleSymbol, enclosing: tuple[float, float], n_grid: int = 2048, refine_tol: float = 1e-10
) -> float:
    """``min |d_x a0(x, +-1)|^2`` over ``{x : a0(x, +-1) in [a', b']}``; 0 when that set is empty."""
    limits = directional_limits(a, n_grid)
    lo, hi = enclosing
    best = np.inf
    for sign in (1, -1):
        p = limits.direction(sign).hermitian_symmetrized()
        deriv = p.derivative()
        x, values = p.grid(n_grid)
        real = values.real
        inside = (real >= lo) & (real <= hi)
        if inside.any():
            best = min(best, float(np.min(np.abs(deriv(x[inside])) ** 2)))
        # the boundary of the preimage sits between grid points
        for level in (lo, hi):
            shifted = real - level
            for i in np.flatnonzero(shifted * np.roll(shifted, -1) < 0):
                root = bisect(
                    lambda s, p=p, level=level: float(p(s).real) - level, x[i], x[i] + 1.0 / n_grid, xtol=refine_tol
                )
                best = min(best, float(abs(deriv(root)) ** 2))
        # interior minima of |p'|^2 not on the grid
        slope = (deriv * deriv.conj()).hermitian_symmetrized()
        for point in critical_points(slope, n_grid, refine_tol).points:
            if lo <= float(p(point).real) <= hi:
                best = min(best, float(slope(point).real))
    return 0.0 if not np.isfinite(best) else max(best, 0.0)


class UnitaryCriticalSet(BaseModel):
    """Angles ``arg a0(x, +-1)`` at points where ``d_x a0(x, +-1) = 0``."""

    angles: list[float] = Field(default_factory=list)
    points_plus: list[float] = Field(default_factory=list)
    points_minus: list[float] = Field(default_factory=list)


def angular_distance(a: ArrayLike, b: ArrayLike) -> NDArray[np.float64]:
    """Distance on the unit circle between angles, in [0, pi]."""
    diff = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    return np.abs((diff + np.pi) % (2.0 * np.pi) - np.pi)


def unitary_critical_set(
    a: CircleSymbol, n_grid: int = 2048, refine_tol: float = 1e-10, tol: float = UNIMODULAR_TOLERANCE
) -> UnitaryCriticalSet:
    """For unimodular limits ``d_x a0 = i a0 theta'``, so the roots are those of ``Im(conj(a0) d_x a0)``."""
    limits = directional_limits(a, n_grid)
    require_unimodular(limits, tol)
    angles: list[float] = []
    points: dict[int, list[float]] = {}
    for sign in (1, -1):
        a0 = limits.direction(sign)
        speed = a0.conj() * a0.derivative()
        roots = periodic_roots(lambda s, speed=speed: float(np.imag(speed(s))), n_grid, refine_tol)
        points[sign] = roots.points
        angles.extend(float(np.angle(a0(s))) for s in roots.points)
        x = limits.grid
        for run in roots.flat_runs:
            angles.append(float(np.angle(np.mean(a0(x[run])))))
    merged: list[float] = []
    for angle in sorted(angles):
        if not merged or float(angular_distance(angle, merged[-1])) > VALUE_MERGE_TOL:
            merged.append(angle)
    if len(merged) > 1 and float(angular_distance(merged[0], merged[-1])) <= VALUE_MERGE_TOL:
        merged.pop()
    logger.debug("unitary critical set: %d angles", len(merged))
    return UnitaryCriticalSet(angles=merged, points_plus=points[1], points_minus=points[-1])


class SymbolClassEntry(BaseModel):
    alpha: int
    beta: int
    constant: float
    bounded: bool


class SymbolClassEstimate(BaseModel):
    order: float
    entries: list[SymbolClassEntry]

    @property
    def bounded(self) -> bool:
        return all(entry.bounded for entry in self.entries)

    def constant(self, alpha: int, beta: int) -> SymbolClassEntry:
        for entry in self.entries:
            if (entry.alpha, entry.beta) == (alpha, beta):
                return entry
        msg = f"no entry for alpha={alpha}, beta={beta}"
        raise KeyError(msg)


def default_class_probes(per_decade: int = 8) -> NDArray[np.float64]:
    return np.logspace(0.0, 6.0, 6 * per_decade + 1)


def _xi_derivative(a: CircleSymbol, x: NDArray[np.float64], xi: float, alpha: int, beta: int) -> NDArray[np.complex128]:
    if beta == 0:
        return a.x_derivative(x, xi, alpha)
    h = max(1e-4, 1e-6 * abs(xi))
    return (_xi_derivative(a, x, xi + h, alpha, beta - 1) - _xi_derivative(a, x, xi - h, alpha, beta - 1)) / (2 * h)


def estimate_symbol_class(
    a: CircleSymbol,
    m: float,
    alpha_max: int = 2,
    beta_max: int = 2,
    x_grid: int = 64,
    xi_probes: ArrayLike | None = None,
) -> SymbolClassEstimate:
    """Sampled ``S^m_{1,0}`` seminorms ``sup |d_x^a d_xi^b a| (1 + |xi|)^{-(m - b)}``.

    Probes are used at both signs of xi. A constant is flagged unbounded when its running
    max still grows by more than 1% across the last probe decade.
    """
    if not (0 <= alpha_max <= 3 and 0 <= beta_max <= 3):
        msg = f"alpha_max and beta_max must lie in 0..3, got {alpha_max}, {beta_max}"
        raise ValueError(msg)
    probes = default_class_probes() if xi_probes is None else np.sort(np.abs(np.asarray(xi_probes, dtype=float)))
    x = np.arange(x_grid) / x_grid
    last_decade = probes >= probes[-1] / 10.0
    entries: list[SymbolClassEntry] = []
    for alpha in range(alpha_max + 1):
        for beta in range(beta_max + 1):
            sup_per_probe = np.array([
                max(float(np.max(np.abs(_xi_derivative(a, x, s * xi, alpha, beta)))) for s in (1.0, -1.0))
                * (1.0 + xi) ** (-(m - beta))
                for xi in probes
            ])
            running = np.maximum.accumulate(sup_per_probe)
            start = running[np.argmax(last_decade)]
            grows = bool(running[-1] > 1.01 * start) if start > 0 else bool(running[-1] > 0)
            entries.append(SymbolClassEntry(alpha=alpha, beta=beta, constant=float(running[-1]), bounded=not grows))
    unbounded = [(e.alpha, e.beta) for e in entries if not e.bounded]
    if unbounded:
        logger.info("symbol exceeds S^%g seminorms at %s", m, unbounded)
    return SymbolClassEstimate(order=m, entries=entries)


def symbol_range_samples(a: CircleSymbol, xi_abs: float = 1e6, n_x: int = 512) -> dict[str, list[float]]:
    """Sampled ``a(x, +-xi_abs)``: an independent look at the essential range."""
    x = np.arange(n_x) / n_x
    return {
        "plus": a(x, xi_abs).real.tolist(),
        "minus": a(x, -xi_abs).real.tolist(),
    }
