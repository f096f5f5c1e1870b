"""Symbols on the cotangent bundle of the 2-torus."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from psdo.symbols.profile import XiProfile, bump

ComplexArray = NDArray[np.complex128]


class Profile2D:
    """Function of ``(xi1, xi2)``; supports ``+``, ``-`` and ``*`` with profiles and scalars."""

    def __call__(self, xi1: ArrayLike, xi2: ArrayLike) -> ComplexArray:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __add__(self, other: Profile2D | complex | float) -> Profile2D:
        return Sum2D((self, _as_profile2d(other)))

    def __radd__(self, other: complex | float) -> Profile2D:
        return Sum2D((_as_profile2d(other), self))

    def __sub__(self, other: Profile2D | complex | float) -> Profile2D:
        return Sum2D((self, Product2D((Const2D(-1.0), _as_profile2d(other)))))

    def __rsub__(self, other: complex | float) -> Profile2D:
        return Sum2D((_as_profile2d(other), Product2D((Const2D(-1.0), self))))

    def __mul__(self, other: Profile2D | complex | float) -> Profile2D:
        return Product2D((self, _as_profile2d(other)))

    def __rmul__(self, other: complex | float) -> Profile2D:
        return Product2D((_as_profile2d(other), self))


def _as_profile2d(value: Profile2D | complex | float) -> Profile2D:
    return value if isinstance(value, Profile2D) else Const2D(complex(value))


def _shape(xi1: ArrayLike, xi2: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    a, b = np.broadcast_arrays(np.asarray(xi1, dtype=float), np.asarray(xi2, dtype=float))
    return a, b


@dataclass(frozen=True)
class Const2D(Profile2D):
    value: complex

    def __call__(self, xi1: ArrayLike, xi2: ArrayLike) -> ComplexArray:
        a, _ = _shape(xi1, xi2)
        return np.full(a.shape, complex(self.value))

    def describe(self) -> str:
        return repr(complex(self.value)) if complex(self.value).imag else repr(complex(self.value).real)


@dataclass(frozen=True)
class Component(Profile2D):
    """The coordinate ``xi_axis`` (axis 1 or 2)."""

    axis: int

    def __post_init__(self) -> None:
        if self.axis not in (1, 2):
            msg = f"axis must be 1 or 2, got {self.axis}"
            raise ValueError(msg)

    def __call__(self, xi1: ArrayLike, xi2: ArrayLike) -> ComplexArray:
        a, b = _shape(xi1, xi2)
        return (a if self.axis == 1 else b).astype(complex)

    def describe(self) -> str:
        return f"xi{self.axis}"


@dataclass(frozen=True)
class JBracket2D(Profile2D):
    p: float

    def __call__(self, xi1: ArrayLike, xi2: ArrayLike) -> ComplexArray:
        a, b = _shape(xi1, xi2)
        return np.power(1.0 + a**2 + b**2, self.p / 2.0).astype(complex)

    def describe(self) -> str:
        return f"jbracket2({self.p!r})"


@dataclass(frozen=True)
class Radial(Profile2D):
    """A one-dimensional profile applied to ``|xi|``."""

    profile: XiProfile

    def __call__(self, xi1: ArrayLike, xi2: ArrayLike) -> ComplexArray:
        a, b = _shape(xi1, xi2)
        return self.profile(np.hypot(a, b))

    def describe(self) -> str:
        return f"radial({self.profile.to_text()})"


@dataclass(frozen=True)
class Sum2D(Profile2D):
    terms: tuple[Profile2D, ...]

    def __call__(self, xi1: ArrayLike, xi2: ArrayLike) -> ComplexArray:
        total = self.terms[0](xi1, xi2)
        for term in self.terms[1:]:
            total = total + term(xi1, xi2)
        return total

    def describe(self) -> str:
        return "(" + " + ".join(t.describe() for t in self.terms) + ")"


@dataclass(frozen=True)
class Product2D(Profile2D):
    factors: tuple[Profile2D, ...]

    def __call__(self, xi1: ArrayLike, xi2: ArrayLike) -> ComplexArray:
        total = self.factors[0](xi1, xi2)
        for factor in self.factors[1:]:
            total = total * factor(xi1, xi2)
        return total

    def describe(self) -> str:
        return "*".join(f.describe() for f in self.factors)


def radial_bump(r_in: float, r_out: float) -> Radial:
    return Radial(bump(0.0, r_in, r_out))


Mode2D = tuple[int, int]


@dataclass(frozen=True)
class TorusSymbol2D:
    """``a(x, xi) = sum_l c_l(xi) e^{2 pi i (l1 x1 + l2 x2)}`` on the 2-torus."""

    coeffs: Mapping[Mode2D, Profile2D]
    _modes: tuple[Mode2D, ...] = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self) -> None:
        coeffs = {(int(m[0]), int(m[1])): p for m, p in sorted(self.coeffs.items())}
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_modes", tuple(coeffs))

    @property
    def bandwidth(self) -> Mode2D:
        return (
            max((abs(m[0]) for m in self._modes), default=0),
            max((abs(m[1]) for m in self._modes), default=0),
        )

    def __call__(self, x1: ArrayLike, x2: ArrayLike, xi1: ArrayLike, xi2: ArrayLike) -> ComplexArray:
        arrays = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x1, x2, xi1, xi2)))
        total = np.zeros(arrays[0].shape, dtype=complex)
        for (l1, l2), profile in self.coeffs.items():
            phase = np.exp(2j * np.pi * (l1 * arrays[0] + l2 * arrays[1]))
            total += profile(arrays[2], arrays[3]) * phase
        return total

    def describe(self) -> dict[str, str]:
        return {f"{m[0]},{m[1]}": p.describe() for m, p in self.coeffs.items()}
