from __future__ import annotations

from collections.abc import Sequence


class ProfileSyntaxError(ValueError):
    """Profile text does not match the grammar; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ProfileArgumentError(ValueError):
    pass


class ProjectionTailError(ValueError):
    def __init__(self, bound: float, tolerance: float) -> None:
        super().__init__(f"Fourier tail bound {bound:.3e} exceeds tolerance {tolerance:.3e}; increase L")
        self.bound = bound
        self.tolerance = tolerance


class NonRealSymbolError(ValueError):
    def __init__(self, max_imag: float) -> None:
        super().__init__(f"symbol is not real-valued (max |Im a| = {max_imag:.3e})")
        self.max_imag = max_imag


class DirectionalLimitError(ValueError):
    def __init__(self, direction: int, order: float) -> None:
        side = "+inf" if direction > 0 else "-inf"
        super().__init__(f"order > 0 in direction {side} (profile grows like |xi|^{order:g})")
        self.direction = direction
        self.order = order


class UnimodularityError(ValueError):
    def __init__(self, deviation: float, tolerance: float) -> None:
        super().__init__(f"directional limits are not unimodular: max ||a0| - 1| = {deviation:.3e} > {tolerance:.1e}")
        self.deviation = deviation


class NonHermitianError(ValueError):
    def __init__(self, deviation: float) -> None:
        super().__init__(
            f"matrix is not Hermitian (max |M - M*| = {deviation:.3e}); "
            "use the unitary path or a polar decomposition instead"
        )
        self.deviation = deviation


class CriticalIntervalError(ValueError):
    def __init__(self, interval: tuple[float, float], hits: Sequence[float]) -> None:
        values = ", ".join(f"{v:.6g}" for v in hits)
        super().__init__(f"interval ({interval[0]:g}, {interval[1]:g}) meets the critical set at {values}")
        self.interval = interval
        self.hits = tuple(hits)


class ScenarioValidationError(ValueError):
    """Aggregated configuration problems as ``(json_pointer, message)`` pairs."""

    def __init__(self, issues: Sequence[tuple[str, str]]) -> None:
        self.issues = list(issues)
        lines = [f"{pointer or '/'}: {message}" for pointer, message in self.issues]
        super().__init__("invalid scenario config:\n" + "\n".join(lines))


class EigenResidualError(ArithmeticError):
    def __init__(self, residual: float, bound: float) -> None:
        super().__init__(f"eigenpair residual {residual:.3e} exceeds {bound:.3e}")
        self.residual = residual
        self.bound = bound
