"""Frequency profiles: closed-form functions of xi that make up symbol coefficients.

A profile is an immutable expression tree. Arithmetic on profiles folds constants, so
``2 * (3 * xi)`` is stored as ``Scaled(6, xi)``; ``to_text`` prints the canonical form that
``parse_profile`` reads back.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import pairwise
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.interpolate import PchipInterpolator

from psdo.errors import DirectionalLimitError
from psdo.symbols.smooth import smooth_step

if TYPE_CHECKING:
    from collections.abc import Iterator

ComplexArray = NDArray[np.complex128]

# (coefficient, power) of the leading term as xi -> +-inf; power -inf encodes "decays".
Asymptote = tuple[complex, float]
_VANISHING: Asymptote = (0j, -math.inf)


def format_number(value: complex) -> str:
    """Canonical numeric literal: repr floats, complex as ``(re+imj)``."""
    value = complex(value)
    if value.imag == 0.0:
        return repr(float(value.real))
    if value.real == 0.0:
        return f"{float(value.imag)!r}j"
    sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
    return f"({float(value.real)!r}{sign}{abs(float(value.imag))!r}j)"


def _as_profile(value: XiProfile | complex | float | int) -> XiProfile:
    if isinstance(value, XiProfile):
        return value
    return Const(complex(value))


class XiProfile:
    """Base class for profile nodes."""

    def __call__(self, xi: ArrayLike) -> ComplexArray:
        raise NotImplementedError

    @property
    def order(self) -> float:
        raise NotImplementedError

    def asymptote(self, direction: int) -> Asymptote:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def children(self) -> Iterator[XiProfile]:
        return iter(())

    def limit(self, direction: int) -> complex:
        """Value of the profile as xi -> direction * inf."""
        if direction not in (1, -1):
            msg = f"direction must be +1 or -1, got {direction}"
            raise ValueError(msg)
        coefficient, power = self.asymptote(direction)
        if coefficient == 0 or power < 0:
            return 0j
        if power == 0:
            return complex(coefficient)
        raise DirectionalLimitError(direction=direction, order=power)

    def is_tabulated(self) -> bool:
        return isinstance(self, Tabulated) or any(child.is_tabulated() for child in self.children())

    def __str__(self) -> str:
        return self.to_text()

    def __add__(self, other: XiProfile | complex | float | int) -> XiProfile:
        return add_profiles(self, _as_profile(other))

    def __radd__(self, other: complex | float | int) -> XiProfile:
        return add_profiles(_as_profile(other), self)

    def __sub__(self, other: XiProfile | complex | float | int) -> XiProfile:
        return add_profiles(self, scale_profile(-1.0, _as_profile(other)))

    def __rsub__(self, other: complex | float | int) -> XiProfile:
        return add_profiles(_as_profile(other), scale_profile(-1.0, self))

    def __mul__(self, other: XiProfile | complex | float | int) -> XiProfile:
        return multiply_profiles(self, _as_profile(other))

    def __rmul__(self, other: complex | float | int) -> XiProfile:
        return multiply_profiles(_as_profile(other), self)

    def __neg__(self) -> XiProfile:
        return scale_profile(-1.0, self)


def _broadcast(xi: ArrayLike) -> NDArray[np.float64]:
    return np.asarray(xi, dtype=float)


def _constant_asymptote(value: complex) -> Asymptote:
    return (complex(value), 0.0) if value != 0 else _VANISHING


@dataclass(frozen=True)
class Const(XiProfile):
    value: complex

    def __call__(self, xi: ArrayLike) -> ComplexArray:
        return np.full(_broadcast(xi).shape, complex(self.value), dtype=complex)

    @property
    def order(self) -> float:
        return 0.0

    def asymptote(self, direction: int) -> Asymptote:
        return _constant_asymptote(self.value)

    def to_text(self) -> str:
        value = complex(self.value)
        if value.imag == 0.0:
            return f"const({format_number(value)})"
        return format_number(value)


@dataclass(frozen=True)
class DirStep(XiProfile):
    """Smooth switch from ``v_minus`` (xi <= -w) to ``v_plus`` (xi >= w)."""

    v_plus: float
    v_minus: float
    w: float

    def __post_init__(self) -> None:
        if not self.w > 0:
            msg = f"dirstep width must be positive, got {self.w}"
            raise ValueError(msg)

    def __call__(self, xi: ArrayLike) -> ComplexArray:
        s = (_broadcast(xi) + self.w) / (2.0 * self.w)
        return (self.v_minus + (self.v_plus - self.v_minus) * smooth_step(s)).astype(complex)

    @property
    def order(self) -> float:
        return 0.0

    def asymptote(self, direction: int) -> Asymptote:
        return _constant_asymptote(self.v_plus if direction > 0 else self.v_minus)

    def to_text(self) -> str:
        return f"dirstep({format_number(self.v_plus)}, {format_number(self.v_minus)}, {format_number(self.w)})"


@dataclass(frozen=True)
class Bump(XiProfile):
    """Equal to 1 on ``|xi - c| <= r_in``, 0 on ``|xi - c| >= r_out``."""

    c: float
    r_in: float
    r_out: float

    def __post_init__(self) -> None:
        if not (0 <= self.r_in < self.r_out):
            msg = f"bump radii need 0 <= r_in < r_out, got r_in={self.r_in}, r_out={self.r_out}"
            raise ValueError(msg)

    def __call__(self, xi: ArrayLike) -> ComplexArray:
        s = (np.abs(_broadcast(xi) - self.c) - self.r_in) / (self.r_out - self.r_in)
        return (1.0 - smooth_step(s)).astype(complex)

    @property
    def order(self) -> float:
        return 0.0

    def asymptote(self, direction: int) -> Asymptote:
        return _VANISHING

    def to_text(self) -> str:
        return f"bump({format_number(self.c)}, {format_number(self.r_in)}, {format_number(self.r_out)})"


@dataclass(frozen=True)
class Xi(XiProfile):
    def __call__(self, xi: ArrayLike) -> ComplexArray:
        return _broadcast(xi).astype(complex)

    @property
    def order(self) -> float:
        return 1.0

    def asymptote(self, direction: int) -> Asymptote:
        return (complex(direction), 1.0)

    def to_text(self) -> str:
        return "xi"


@dataclass(frozen=True)
class JBracket(XiProfile):
    """Japanese bracket ``(1 + xi^2)^(p/2)``."""

    p: float

    def __call__(self, xi: ArrayLike) -> ComplexArray:
        return np.power(1.0 + _broadcast(xi) ** 2, self.p / 2.0).astype(complex)

    @property
    def order(self) -> float:
        return float(self.p)

    def asymptote(self, direction: int) -> Asymptote:
        return (1 + 0j, float(self.p))

    def to_text(self) -> str:
        return f"jbracket({format_number(self.p)})"


@dataclass(frozen=True)
class Scaled(XiProfile):
    scalar: complex
    inner: XiProfile

    def __call__(self, xi: ArrayLike) -> ComplexArray:
        return complex(self.scalar) * self.inner(xi)

    @property
    def order(self) -> float:
        return self.inner.order

    def children(self) -> Iterator[XiProfile]:
        yield self.inner

    def asymptote(self, direction: int) -> Asymptote:
        coefficient, power = self.inner.asymptote(direction)
        if coefficient == 0:
            return _VANISHING
        return (complex(self.scalar) * coefficient, power)

    def to_text(self) -> str:
        scalar = complex(self.scalar)
        inner = _wrap_sum(self.inner)
        if scalar == -1:
            return f"-{inner}"
        return f"{format_number(scalar)}*{inner}"


@dataclass(frozen=True)
class Sum(XiProfile):
    terms: tuple[XiProfile, ...]

    def __call__(self, xi: ArrayLike) -> ComplexArray:
        total = self.terms[0](xi)
        for term in self.terms[1:]:
            total = total + term(xi)
        return total

    @property
    def order(self) -> float:
        return max(term.order for term in self.terms)

    def children(self) -> Iterator[XiProfile]:
        yield from self.terms

    def asymptote(self, direction: int) -> Asymptote:
        by_power: dict[float, complex] = {}
        for term in self.terms:
            coefficient, power = term.asymptote(direction)
            if coefficient != 0:
                by_power[power] = by_power.get(power, 0j) + coefficient
        for power in sorted(by_power, reverse=True):
            if by_power[power] != 0:
                return (by_power[power], power)
        return _VANISHING

    def to_text(self) -> str:
        parts = [self.terms[0].to_text()]
        for term in self.terms[1:]:
            negated = _negated_real(term)
            if negated is not None:
                parts.append(f" - {negated.to_text()}")
            else:
                parts.append(f" + {term.to_text()}")
        return "".join(parts)


@dataclass(frozen=True)
class Product(XiProfile):
    factors: tuple[XiProfile, ...]

    def __call__(self, xi: ArrayLike) -> ComplexArray:
        total = self.factors[0](xi)
        for factor in self.factors[1:]:
            total = total * factor(xi)
        return total

    @property
    def order(self) -> float:
        return sum(factor.order for factor in self.factors)

    def children(self) -> Iterator[XiProfile]:
        yield from self.factors

    def asymptote(self, direction: int) -> Asymptote:
        coefficient, power = 1 + 0j, 0.0
        for factor in self.factors:
            c, p = factor.asymptote(direction)
            if c == 0:
                return _VANISHING
            coefficient *= c
            power += p
        return (coefficient, power)

    def to_text(self) -> str:
        return "*".join(_wrap_sum(factor) for factor in self.factors)


@dataclass(frozen=True)
class Tabulated(XiProfile):
    """Profile known only at probe frequencies; PCHIP in between, constant outside."""

    probes: tuple[float, ...]
    values: tuple[complex, ...]
    _real: PchipInterpolator | None = field(init=False, repr=False, compare=False, default=None)
    _imag: PchipInterpolator | None = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        if len(self.probes) != len(self.values) or not self.probes:
            msg = "tabulated profile needs matching, non-empty probe and value tables"
            raise ValueError(msg)
        if any(b <= a for a, b in pairwise(self.probes)):
            msg = "tabulated probes must be strictly increasing"
            raise ValueError(msg)
        if len(self.probes) > 1:
            xs = np.asarray(self.probes, dtype=float)
            ys = np.asarray(self.values, dtype=complex)
            object.__setattr__(self, "_real", PchipInterpolator(xs, ys.real, extrapolate=False))
            object.__setattr__(self, "_imag", PchipInterpolator(xs, ys.imag, extrapolate=False))

    def __call__(self, xi: ArrayLike) -> ComplexArray:
        arr = _broadcast(xi)
        if self._real is None or self._imag is None:
            return np.full(arr.shape, complex(self.values[0]), dtype=complex)
        clipped = np.clip(arr, self.probes[0], self.probes[-1])
        return self._real(clipped) + 1j * self._imag(clipped)

    @property
    def order(self) -> float:
        return 0.0

    def asymptote(self, direction: int) -> Asymptote:
        return _constant_asymptote(self.values[-1] if direction > 0 else self.values[0])

    def to_text(self) -> str:
        msg = "tabulated profiles have no text form; serialize them as sample tables"
        raise TypeError(msg)

    @cached_property
    def sup_abs(self) -> float:
        return float(np.max(np.abs(np.asarray(self.values))))


def _wrap_sum(profile: XiProfile) -> str:
    text = profile.to_text()
    return f"({text})" if isinstance(profile, Sum) else text


def _negated_real(term: XiProfile) -> XiProfile | None:
    """``-term`` when term carries a negative real scalar, else None."""
    if isinstance(term, Scaled):
        scalar = complex(term.scalar)
        if scalar.imag == 0 and scalar.real < 0:
            return scale_profile(-scalar.real, term.inner)
    if isinstance(term, Const):
        value = complex(term.value)
        if value.imag == 0 and value.real < 0:
            return Const(complex(-value.real))
    return None


def scale_profile(scalar: complex, profile: XiProfile) -> XiProfile:
    scalar = complex(scalar)
    if scalar == 0:
        return Const(0j)
    if isinstance(profile, Const):
        return Const(scalar * complex(profile.value))
    if isinstance(profile, Scaled):
        return scale_profile(scalar * complex(profile.scalar), profile.inner)
    if scalar == 1:
        return profile
    return Scaled(scalar, profile)


def add_profiles(left: XiProfile, right: XiProfile) -> XiProfile:
    if isinstance(left, Const) and isinstance(right, Const):
        return Const(complex(left.value) + complex(right.value))
    terms: list[XiProfile] = []
    for side in (left, right):
        if isinstance(side, Sum):
            terms.extend(side.terms)
        elif not (isinstance(side, Const) and side.value == 0):
            terms.append(side)
    if not terms:
        return Const(0j)
    if len(terms) == 1:
        return terms[0]
    return Sum(tuple(terms))


def multiply_profiles(left: XiProfile, right: XiProfile) -> XiProfile:
    if isinstance(left, Const):
        return scale_profile(complex(left.value), right)
    if isinstance(right, Const):
        return scale_profile(complex(right.value), left)
    scalar = 1 + 0j
    if isinstance(left, Scaled):
        scalar *= complex(left.scalar)
        left = left.inner
    if isinstance(right, Scaled):
        scalar *= complex(right.scalar)
        right = right.inner
    factors: list[XiProfile] = []
    for side in (left, right):
        factors.extend(side.factors if isinstance(side, Product) else (side,))
    return scale_profile(scalar, Product(tuple(factors)))


def const(value: complex) -> Const:
    return Const(complex(value))


def dirstep(v_plus: float, v_minus: float, w: float) -> DirStep:
    return DirStep(float(v_plus), float(v_minus), float(w))


def bump(c: float, r_in: float, r_out: float) -> Bump:
    return Bump(float(c), float(r_in), float(r_out))


def jbracket(p: float) -> JBracket:
    return JBracket(float(p))


xi = Xi()


def tabulated(probes: Sequence[float], values: Sequence[complex]) -> XiProfile:
    """Build a sampled profile; a table with one distinct value collapses to a constant."""
    vals = np.asarray(values, dtype=complex)
    if vals.size and np.all(vals == vals[0]):
        return Const(complex(vals[0]))
    order = np.argsort(np.asarray(probes, dtype=float), kind="stable")
    return Tabulated(
        probes=tuple(float(probes[i]) for i in order),
        values=tuple(complex(vals[i]) for i in order),
    )


def sup_abs(profile: XiProfile, probes: ArrayLike | None = None) -> float:
    """Sampled ``sup |profile|``; tabulated profiles use their own table."""
    if isinstance(profile, Tabulated):
        return profile.sup_abs
    if isinstance(profile, Const):
        return abs(complex(profile.value))
    grid = default_xi_probes() if probes is None else np.asarray(probes, dtype=float)
    return float(np.max(np.abs(profile(grid))))


def default_xi_probes(decades: tuple[float, float] = (-2.0, 6.0), per_decade: int = 100) -> NDArray[np.float64]:
    """Symmetric probe set: linear near 0, log-spaced out to ``10**decades[1]``."""
    n = int((decades[1] - decades[0]) * per_decade) + 1
    tail = np.logspace(decades[0], decades[1], n)
    core = np.linspace(-1.0, 1.0, 41)
    return np.unique(np.concatenate([-tail, core, tail]))
