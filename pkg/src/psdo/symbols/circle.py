from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from psdo.errors import NonRealSymbolError, ProjectionTailError
from psdo.symbols.grammar import parse_profile
from psdo.symbols.profile import Const, Tabulated, XiProfile, default_xi_probes, sup_abs, tabulated

logger = logging.getLogger(__name__)

ComplexArray = NDArray[np.complex128]
SampledFunction = Callable[[NDArray[np.float64], NDArray[np.float64]], ArrayLike]

REALITY_TOLERANCE = 1e-12


def _reality_xi_grid() -> NDArray[np.float64]:
    tail = np.logspace(-1.0, 6.0, 16)
    return np.concatenate([-tail[::-1], tail])


@dataclass(frozen=True)
class TrigPolynomial:
    """Finite Fourier series ``sum_l c_l e^{2 pi i l x}`` on the circle."""

    coeffs: Mapping[int, complex]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", {int(mode): complex(c) for mode, c in sorted(self.coeffs.items())})

    @property
    def bandwidth(self) -> int:
        return max((abs(mode) for mode, c in self.coeffs.items() if c != 0), default=0)

    def coefficient(self, mode: int) -> complex:
        return self.coeffs.get(mode, 0j)

    def __call__(self, x: ArrayLike) -> ComplexArray:
        x_arr = np.asarray(x, dtype=float)
        total = np.zeros(x_arr.shape, dtype=complex)
        for mode, c in self.coeffs.items():
            if c != 0:
                total += c * np.exp(2j * np.pi * mode * x_arr)
        return total

    def derivative(self, order: int = 1) -> TrigPolynomial:
        return TrigPolynomial({mode: c * (2j * np.pi * mode) ** order for mode, c in self.coeffs.items()})

    def conj(self) -> TrigPolynomial:
        return TrigPolynomial({-mode: np.conj(c) for mode, c in self.coeffs.items()})

    def __mul__(self, other: TrigPolynomial) -> TrigPolynomial:
        out: dict[int, complex] = {}
        for l1, c1 in self.coeffs.items():
            for l2, c2 in other.coeffs.items():
                out[l1 + l2] = out.get(l1 + l2, 0j) + c1 * c2
        return TrigPolynomial(out)

    def scaled(self, factor: complex) -> TrigPolynomial:
        return TrigPolynomial({mode: factor * c for mode, c in self.coeffs.items()})

    def hermitian_symmetrized(self) -> TrigPolynomial:
        """Project onto real-valued functions: ``c_l <- (c_l + conj(c_-l)) / 2``."""
        keys = set(self.coeffs) | {-mode for mode in self.coeffs}
        return TrigPolynomial({
            mode: 0.5 * (self.coefficient(mode) + np.conj(self.coefficient(-mode))) for mode in sorted(keys)
        })

    def is_constant(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for mode, c in self.coeffs.items() if mode != 0)

    def grid(self, n_grid: int) -> tuple[NDArray[np.float64], ComplexArray]:
        x = np.arange(n_grid) / n_grid
        return x, self(x)


@dataclass(frozen=True)
class CircleSymbol:
    """Symbol ``a(x, xi) = sum_l c_l(xi) e^{2 pi i l x}`` on the cotangent bundle of the circle.

    ``order`` defaults to the largest coefficient profile order. ``tail_bound`` is set by
    ``fourier_project`` and records the certified truncation error of the series.
    """

    coeffs: Mapping[int, XiProfile]
    order: float | None = None
    tail_bound: float = 0.0
    _sorted: tuple[int, ...] = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self) -> None:
        coeffs = {int(mode): p for mode, p in sorted(self.coeffs.items())}
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_sorted", tuple(coeffs))
        profile_order = max((p.order for p in coeffs.values()), default=0.0)
        if self.order is None:
            object.__setattr__(self, "order", float(max(profile_order, 0.0)))
        elif profile_order > float(self.order) + 1e-12:
            msg = f"declared order {self.order} is below the coefficient order {profile_order}"
            raise ValueError(msg)

    @classmethod
    def from_texts(cls, texts: Mapping[int, str], order: float | None = None) -> CircleSymbol:
        return cls({mode: parse_profile(text) for mode, text in texts.items()}, order=order)

    @property
    def declared_order(self) -> float:
        return float(self.order if self.order is not None else 0.0)

    @property
    def bandwidth(self) -> int:
        return max((abs(mode) for mode in self._sorted), default=0)

    @property
    def modes(self) -> tuple[int, ...]:
        return self._sorted

    def coefficient(self, mode: int) -> XiProfile:
        return self.coeffs.get(mode, Const(0j))

    def is_x_independent(self) -> bool:
        return all(mode == 0 for mode in self._sorted)

    def __call__(self, x: ArrayLike, xi: ArrayLike) -> ComplexArray:
        return self.x_derivative(x, xi, 0)

    def x_derivative(self, x: ArrayLike, xi: ArrayLike, alpha: int) -> ComplexArray:
        """``d_x^alpha a(x, xi)``, exact: coefficient l picks up ``(2 pi i l)^alpha``."""
        x_arr, xi_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(xi, dtype=float))
        total = np.zeros(x_arr.shape, dtype=complex)
        for mode, profile in self.coeffs.items():
            if alpha and mode == 0:
                continue
            factor = (2j * np.pi * mode) ** alpha
            total += factor * profile(xi_arr) * np.exp(2j * np.pi * mode * x_arr)
        return total

    def max_imag(self, n_x: int = 128, xi_grid: ArrayLike | None = None) -> float:
        xs = np.arange(n_x) / n_x
        xis = _reality_xi_grid() if xi_grid is None else np.asarray(xi_grid, dtype=float)
        values = self(xs[:, None], xis[None, :])
        return float(np.max(np.abs(values.imag)))

    def is_real(self, tol: float = REALITY_TOLERANCE) -> bool:
        return self.max_imag() <= tol

    def require_real(self, tol: float = REALITY_TOLERANCE) -> None:
        deviation = self.max_imag()
        if deviation > tol:
            raise NonRealSymbolError(deviation)

    def coefficient_sups(self, probes: ArrayLike | None = None) -> dict[int, float]:
        return {mode: sup_abs(p, probes) for mode, p in self.coeffs.items()}

    def sup_bound(self, probes: ArrayLike | None = None) -> float:
        """Schur bound ``sum_l sup_xi |c_l(xi)|`` for every truncation of the Weyl/standard matrix."""
        return float(sum(self.coefficient_sups(probes).values()))

    def to_document(self) -> dict[str, Any]:
        entries: list[dict[str, Any]] = []
        for mode, profile in self.coeffs.items():
            if isinstance(profile, Tabulated):
                values = np.asarray(profile.values, dtype=complex)
                table = {"probes": list(profile.probes), "re": values.real.tolist(), "im": values.imag.tolist()}
                entries.append({"l": mode, "profile": table})
            else:
                entries.append({"l": mode, "profile": profile.to_text()})
        return {"order": self.declared_order, "coeffs": entries}

    @classmethod
    def from_document(cls, document: Mapping[str, Any]) -> CircleSymbol:
        coeffs: dict[int, XiProfile] = {}
        for entry in document.get("coeffs", []):
            profile = entry["profile"]
            if isinstance(profile, str):
                coeffs[int(entry["l"])] = parse_profile(profile)
            else:
                values = np.asarray(profile["re"], dtype=float) + 1j * np.asarray(profile["im"], dtype=float)
                coeffs[int(entry["l"])] = tabulated(profile["probes"], values.tolist())
        return cls(coeffs, order=document.get("order"))


def evaluate(a: CircleSymbol, x: ArrayLike, xi: ArrayLike) -> complex | ComplexArray:
    """Evaluate ``a(x, xi)``; scalars in, scalar out."""
    values = a(x, xi)
    if values.ndim == 0:
        return complex(values)
    return values


def fourier_project(
    f: SampledFunction,
    L: int,
    n_grid: int,
    xi_probes: ArrayLike | None = None,
    tol: float = 1e-9,
    order: float = 0.0,
) -> CircleSymbol:
    """Project ``f(x, xi)`` onto modes ``|l| <= L`` with the trapezoid rule on ``n_grid`` points.

    ``f`` is called once with ``x`` of shape ``(n_grid, 1)`` and ``xi`` of shape ``(1, P)``.
    Coefficients that vary with xi become tabulated profiles on the probe set.
    """
    if L < 1:
        msg = f"L must be at least 1, got {L}"
        raise ValueError(msg)
    if n_grid < 4 * L:
        msg = f"n_grid must be at least 4L = {4 * L}, got {n_grid}"
        raise ValueError(msg)
    probes = default_xi_probes() if xi_probes is None else np.unique(np.asarray(xi_probes, dtype=float))
    x = (np.arange(n_grid) / n_grid)[:, None]
    samples = np.broadcast_to(np.asarray(f(x, probes[None, :]), dtype=complex), (n_grid, probes.size))
    hat = np.fft.fft(samples, axis=0) / n_grid

    real_input = not np.any(samples.imag)
    coeffs: dict[int, XiProfile] = {}
    for mode in range(-L, L + 1):
        row = hat[mode % n_grid]
        if real_input and mode < 0:
            row = np.conj(hat[-mode])
        elif real_input and mode == 0:
            row = row.real.astype(complex)
        coeffs[mode] = tabulated(probes.tolist(), row.tolist())

    tail = float(np.max(np.abs(hat[L % n_grid]) + np.abs(hat[-L % n_grid])))
    if tail > tol:
        raise ProjectionTailError(tail, tol)
    if tail > 0.1 * tol:
        logger.warning("Fourier tail %.3e is within a factor 10 of tolerance %.1e", tail, tol)
    logger.debug("projected onto %d modes on %d x-points and %d probes (tail %.3e)", 2 * L + 1, n_grid, probes.size, tail)
    return CircleSymbol(coeffs, order=order, tail_bound=tail)


@dataclass(frozen=True)
class DirectionalLimits:
    """``a(., +1)`` and ``a(., -1)`` as trig polynomials, with their uniform samples."""

    plus: TrigPolynomial
    minus: TrigPolynomial
    n_grid: int

    def direction(self, sign: int) -> TrigPolynomial:
        return self.plus if sign > 0 else self.minus

    @property
    def grid(self) -> NDArray[np.float64]:
        return np.arange(self.n_grid) / self.n_grid

    def samples(self, sign: int) -> ComplexArray:
        return self.direction(sign)(self.grid)

    @property
    def coincide(self) -> bool:
        keys = set(self.plus.coeffs) | set(self.minus.coeffs)
        return all(self.plus.coefficient(mode) == self.minus.coefficient(mode) for mode in keys)


def directional_limits(a: CircleSymbol, n_grid: int = 2048) -> DirectionalLimits:
    """Limits of ``a(x, xi)`` as ``xi -> +-inf``, coefficient by coefficient."""
    plus = TrigPolynomial({mode: p.limit(1) for mode, p in a.coeffs.items()})
    minus = TrigPolynomial({mode: p.limit(-1) for mode, p in a.coeffs.items()})
    return DirectionalLimits(plus=plus, minus=minus, n_grid=n_grid)
