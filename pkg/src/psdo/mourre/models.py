from __future__ import annotations

from itertools import pairwise
from typing import Literal

from pydantic import BaseModel, Field

Verdict = Literal["PASS", "FAIL"]

# slack on the PASS threshold so a vanishing C does not fail on rounding
ABSOLUTE_FLOOR = 1e-10
PASS_FRACTION = 0.05


class LambdaMin(BaseModel):
    n: int
    value: float


class UnitaryExtras(BaseModel):
    arc: tuple[float, float]
    polar_distance: float = Field(description="||U_K - W||_2 for the unitary polar factor W")
    polar_circle_distance: float = Field(
        description="max ||mu| - 1| over eigenvalues mu of W; rounding level by construction, checks the Schur step only"
    )
    truncated_circle_distance: float = Field(description="max ||mu| - 1| over eigenvalues mu of U_K")
    arc_coverage: float = Field(description="max angular distance from the predicted range to the eigen-angles")
    arc_containment: float = Field(description="max angular distance from the eigen-angles to the predicted range")
    arc_hausdorff: float
    eigenvalues_in_arc: int
    critical_angles: list[float] = Field(default_factory=list)


class MourreReport(BaseModel):
    K: int
    interval: tuple[float, float]
    enclosing: tuple[float, float] | None = None
    C: float
    lambda_min: list[LambdaMin]
    residual: float | None = None
    cutoff: str
    route: str = "eig"
    verdict: Verdict
    monotone: bool
    unitary_extras: UnitaryExtras | None = None

    def value_at(self, n: int) -> float:
        for entry in self.lambda_min:
            if entry.n == n:
                return entry.value
        msg = f"no lambda_min recorded for n={n}"
        raise KeyError(msg)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def verdict_for(lambda_min: list[LambdaMin], C: float) -> tuple[Verdict, bool]:
    """PASS iff the last (largest n) entry is at least ``-0.05 C``; also whether the table is nondecreasing."""
    threshold = -PASS_FRACTION * C - ABSOLUTE_FLOOR
    verdict: Verdict = "PASS" if lambda_min[-1].value >= threshold else "FAIL"
    values = [entry.value for entry in lambda_min]
    monotone = all(later >= earlier - ABSOLUTE_FLOOR for earlier, later in pairwise(values))
    return verdict, monotone
