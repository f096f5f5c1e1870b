from __future__ import annotations

import json
import math
from collections.abc import Mapping
from itertools import pairwise
from typing import Annotated, Any, Literal

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)

from psdo.calculus.extension import DEFAULT_Y_SCALE
from psdo.errors import ScenarioValidationError
from psdo.symbols import parse_profile


def normalize_value(v: Any) -> Any:
    if isinstance(v, str):
        return v.strip().lower()
    return v


Normalize = BeforeValidator(normalize_value)

PresetName = Literal["example13", "example14", "cosine", "dirstep", "two_direction", "scattering"]
TaskName = Literal[
    "spectrum", "essential", "stability", "density", "ordergap", "classcheck", "hscheck", "mourre", "unitary"
]
# execution order; tasks reuse what earlier ones cached (eigendecompositions, persistent values)
TASK_ORDER: tuple[TaskName, ...] = (
    "essential",
    "stability",
    "spectrum",
    "density",
    "ordergap",
    "classcheck",
    "hscheck",
    "mourre",
    "unitary",
)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CoefficientConfig(_Strict):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    mode: int = Field(alias="l", description="Fourier mode l of e^{2 pi i l x}")
    profile: str = Field(description="xi-profile in the profile grammar, e.g. '0.5*dirstep(1, 0, 1)'")

    @field_validator("profile")
    @classmethod
    def _parse(cls, v: str) -> str:
        parse_profile(v)
        return v


class SymbolConfig(_Strict):
    preset: Annotated[PresetName, Normalize] | None = Field(default=None, description="named symbol")
    c: float = Field(default=1.0, description="amplitude of the scattering preset")
    projection_modes: PositiveInt = Field(default=12, description="L for presets built by Fourier projection")
    coefficients: list[CoefficientConfig] | None = Field(default=None, description="inline coefficient list")
    order: float | None = Field(default=None, description="declared symbol order (defaults to the profile order)")

    @model_validator(mode="after")
    def _one_source(self) -> SymbolConfig:
        if (self.preset is None) == (self.coefficients is None):
            msg = "give exactly one of 'preset' or 'coefficients'"
            raise ValueError(msg)
        if self.coefficients is not None:
            modes = [c.mode for c in self.coefficients]
            if len(set(modes)) != len(modes):
                msg = f"duplicate Fourier modes in coefficients: {sorted(modes)}"
                raise ValueError(msg)
            if not modes:
                msg = "coefficients must not be empty"
                raise ValueError(msg)
        return self


class SpectrumTask(_Strict):
    band_tol: float = Field(default=1e-2, gt=0, description="distance to a predicted band that still counts as band")
    export_matrices: bool = Field(default=False, description="also write each finite section as JSON bands and dense CSV")


class EssentialTask(_Strict):
    n_grid: int = Field(default=2048, ge=16)
    refine_tol: float = Field(default=1e-10, gt=0)


def _ascending(ks: list[int] | None, minimum: int) -> list[int] | None:
    if ks is None:
        return ks
    if len(ks) < minimum or any(b <= a for a, b in pairwise(ks)):
        msg = f"need at least {minimum} strictly ascending sizes, got {ks}"
        raise ValueError(msg)
    return ks


class StabilityTask(_Strict):
    match_tol: float | None = Field(default=None, gt=0, description="defaults to 0.1 / max(K_list)")
    K_list: list[PositiveInt] | None = Field(default=None, description="defaults to the scenario K_list")

    @field_validator("K_list")
    @classmethod
    def _check_sizes(cls, v: list[int] | None) -> list[int] | None:
        return _ascending(v, 3)


class DensityTask(_Strict):
    probe: str = Field(default="constant", description="constant, fourier-ones, random or mode:<k>")
    eps: float | None = Field(default=None, gt=0, description="defaults to 10x the mean level spacing")
    window: tuple[float, float] = Field(default=(-1.5, 1.5))
    points: int = Field(default=601, ge=2)
    K: PositiveInt | None = None

    @field_validator("probe")
    @classmethod
    def _check_probe(cls, v: str) -> str:
        kind = v.strip().lower()
        if kind in ("constant", "fourier-ones", "random"):
            return kind
        if kind.startswith("mode:"):
            try:
                int(kind.split(":", 1)[1])
            except ValueError:
                msg = f"mode probe needs an integer, got {v!r}"
                raise ValueError(msg) from None
            return kind
        msg = f"unknown probe {v!r}"
        raise ValueError(msg)

    @field_validator("window")
    @classmethod
    def _check_window(cls, v: tuple[float, float]) -> tuple[float, float]:
        if not v[0] < v[1]:
            msg = f"window must be increasing, got {v}"
            raise ValueError(msg)
        return v


class _Localized(_Strict):
    interval: tuple[float, float] = Field(description="(a, b) where the cutoff is 1")
    enclosing: tuple[float, float] = Field(description="(a', b') containing the cutoff support")

    @model_validator(mode="after")
    def _nested(self) -> _Localized:
        (a, b), (outer_a, outer_b) = self.interval, self.enclosing
        if not outer_a < a < b < outer_b:
            msg = f"need a' < a < b < b', got interval {self.interval} in enclosing {self.enclosing}"
            raise ValueError(msg)
        return self


class MourreTask(_Localized):
    K: PositiveInt | None = Field(default=None, description="defaults to max(K_list)")
    cutoff_order: int = Field(default=5, ge=1, le=8)
    route: Annotated[Literal["eig", "hs"], Normalize] = "eig"
    residual_K: list[PositiveInt] = Field(default_factory=list, description="extra sizes for the residual decay")


class HSCheckTask(_Localized):
    K: PositiveInt | None = Field(default=None, description="defaults to min(K_list)")
    taylor_order: int = Field(default=5, ge=1, le=8)
    nx: PositiveInt = 400
    ny: PositiveInt = 200
    y_scale: float = Field(default=DEFAULT_Y_SCALE, gt=0)
    refine: bool = False
    workers: PositiveInt = 1
    decay_orders: list[int] = Field(default_factory=lambda: [1, 3, 5])

    @field_validator("decay_orders")
    @classmethod
    def _check_orders(cls, v: list[int]) -> list[int]:
        bad = [n for n in v if not 1 <= n <= 8]
        if bad:
            msg = f"taylor orders must lie in 1..8, got {bad}"
            raise ValueError(msg)
        return v


class UnitaryTask(_Strict):
    arc: tuple[float, float] = Field(description="(theta1, theta2), counter-clockwise")
    K: PositiveInt | None = Field(default=None, description="defaults to max(K_list)")
    defect_n: list[PositiveInt] = Field(default_factory=lambda: [64, 128])

    @field_validator("arc")
    @classmethod
    def _check_arc(cls, v: tuple[float, float]) -> tuple[float, float]:
        if not 0.0 < v[1] - v[0] < 2.0 * math.pi:
            msg = f"arc must satisfy 0 < theta2 - theta1 < 2 pi, got {v}"
            raise ValueError(msg)
        return v


class ClassCheckTask(_Strict):
    m: float | None = Field(default=None, description="order to test; defaults to the declared order")
    alpha_max: int = Field(default=2, ge=0, le=3)
    beta_max: int = Field(default=2, ge=0, le=3)


class OrderGapTask(_Strict):
    K: PositiveInt | None = Field(default=None, description="defaults to max(K_list)")
    n: list[PositiveInt] | None = Field(default=None, description="defaults to [K/8, K/4]")
    norm_K_list: list[PositiveInt] | None = Field(default=None, description="sizes for the uniform norm bound")


class TasksConfig(_Strict):
    spectrum: SpectrumTask | None = None
    essential: EssentialTask | None = None
    stability: StabilityTask | None = None
    density: DensityTask | None = None
    ordergap: OrderGapTask | None = None
    classcheck: ClassCheckTask | None = None
    hscheck: HSCheckTask | None = None
    mourre: MourreTask | None = None
    unitary: UnitaryTask | None = None

    @model_validator(mode="before")
    @classmethod
    def _list_form(cls, data: Any) -> Any:
        """``["spectrum", "essential"]`` is shorthand for ``{"spectrum": {}, "essential": {}}``."""
        if isinstance(data, list):
            return {normalize_value(name): {} for name in data}
        return data

    def requested(self) -> list[TaskName]:
        return [name for name in TASK_ORDER if getattr(self, name) is not None]


class ScenarioConfig(_Strict):
    name: str = Field(default="scenario")
    symbol: SymbolConfig
    t: float = Field(default=0.5, ge=0.0, le=1.0, description="quantization parameter; 1/2 is Weyl")
    K_list: list[PositiveInt] = Field(default_factory=lambda: [64, 128, 256], min_length=1)
    tasks: TasksConfig = Field(default_factory=TasksConfig)
    output_dir: str = Field(default="out")
    seed: int = Field(default=0, description="seed for random probe vectors")
    jobs: PositiveInt = Field(default=1, description="threads for independent K values")

    @property
    def K_max(self) -> int:
        return max(self.K_list)

    @property
    def K_min(self) -> int:
        return min(self.K_list)


def json_pointer(loc: tuple[int | str, ...]) -> str:
    return "".join("/" + str(part).replace("~", "~0").replace("/", "~1") for part in loc)


def _issues(error: ValidationError) -> list[tuple[str, str]]:
    issues = []
    for err in error.errors():
        message = str(err["msg"]).removeprefix("Value error, ")
        issues.append((json_pointer(tuple(err["loc"])), message))
    return issues


def parse_scenario(source: str | Mapping[str, Any] | ScenarioConfig) -> ScenarioConfig:
    """Structural validation only; every problem is reported at once as JSON pointers."""
    if isinstance(source, ScenarioConfig):
        return source
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as e:
            raise ScenarioValidationError([("", f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})")]) from e
    try:
        return ScenarioConfig.model_validate(source)
    except ValidationError as e:
        raise ScenarioValidationError(_issues(e)) from e
