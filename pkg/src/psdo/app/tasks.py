from __future__ import annotations

import logging
from collections.abc import Mapping
from itertools import pairwise
from typing import TYPE_CHECKING, Any, TypeVar

import numpy as np
from pydantic import BaseModel

from psdo.app.models import TaskOutcome
from psdo.app.settings import (
    ClassCheckTask,
    DensityTask,
    EssentialTask,
    HSCheckTask,
    MourreTask,
    OrderGapTask,
    SpectrumTask,
    StabilityTask,
    TaskName,
    UnitaryTask,
)
from psdo.calculus import QuadratureGrid, almost_analytic, build_cutoff, compare_routes
from psdo.mourre import commutator_symbol_residual, mourre_check_selfadjoint, mourre_check_unitary, unitarity_defect
from psdo.quantization import op_norm, order_gap_norm, quantize_circle, quantize_torus2_weyl, torus_index
from psdo.spectral import (
    SpectralDecomposition,
    StabilityResult,
    band_coverage,
    classify_spectrum,
    decompose_many,
    eigendecompose,
    probe_vector,
    spectral_density,
    survival_average,
    truncation_stability,
    unclassified_spectrum,
)
from psdo.symbols import (
    CircleSymbol,
    EssentialSpectrumPrediction,
    TorusSymbol2D,
    estimate_symbol_class,
    predict_essential_spectrum,
    symbol_range_samples,
)
from psdo.workflow.step import WorkflowContext, WorkflowState, WorkflowStep

if TYPE_CHECKING:
    from psdo.app.settings import ScenarioConfig
    from psdo.blob.local_fs import LocalFS
    from psdo.quantization.matrix import Geometry

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=BaseModel)

HS_TOLERANCE = 1e-6
DECAY_SLACK = 0.5
# sup-norm samples of the coefficients are a lower bound of the true sup; leave a little room
NORM_BOUND_SLACK = 1e-9


def format_value(v: float) -> str:
    return "0" if abs(v) < 1e-12 else f"{v:.6g}"


def _format_intervals(intervals: list[tuple[float, float]]) -> str:
    unique = sorted(set(intervals))
    return " U ".join(f"[{format_value(lo)}, {format_value(hi)}]" for lo, hi in unique)


class ScenarioTasksMixin:
    if TYPE_CHECKING:
        config: ScenarioConfig
        symbol: CircleSymbol | TorusSymbol2D
        geometry: Geometry
        fs: LocalFS

    def _build_task_steps(self) -> list[WorkflowStep]:
        handlers = {
            "essential": self._task_essential,
            "stability": self._task_stability,
            "spectrum": self._task_spectrum,
            "density": self._task_density,
            "ordergap": self._task_ordergap,
            "classcheck": self._task_classcheck,
            "hscheck": self._task_hscheck,
            "mourre": self._task_mourre,
            "unitary": self._task_unitary,
        }
        steps = []
        for name in self.config.tasks.requested():
            steps.append(
                WorkflowStep(
                    step_id=name,
                    role="task",
                    handler=handlers[name],
                    requires={"decompositions", "outcomes"},
                    produces={"outcomes"},
                    config=getattr(self.config.tasks, name).model_dump(),
                    optional=True,
                )
            )
        return steps

    @staticmethod
    def _task_config(model: type[T], context: WorkflowContext) -> T:
        raw = context.get("step_config", {}) if isinstance(context, Mapping) else {}
        return model.model_validate(raw)

    @staticmethod
    def _record(state: WorkflowState, outcome: TaskOutcome) -> WorkflowState:
        state["outcomes"] = [*state["outcomes"], outcome]
        logger.info("task %s: %s %s", outcome.task, outcome.status, outcome.headline)
        return state

    def _circle(self, task: TaskName) -> CircleSymbol:
        if not isinstance(self.symbol, CircleSymbol):
            msg = f"task '{task}' needs a circle symbol"
            raise TypeError(msg)
        return self.symbol

    def _decompositions(self, state: WorkflowState, ks: list[int]) -> list[SpectralDecomposition]:
        cache: dict[int, SpectralDecomposition] = state["decompositions"]
        missing = [K for K in ks if K not in cache]
        if missing:
            if isinstance(self.symbol, CircleSymbol):
                decs = decompose_many(self.symbol, self.config.t, missing, self.config.jobs)
                cache.update(zip(missing, decs, strict=True))
            else:
                for K in missing:
                    cache[K] = eigendecompose(quantize_torus2_weyl(self.symbol, K))
        return [cache[K] for K in ks]

    def _prediction(
        self, state: WorkflowState, n_grid: int = 2048, refine_tol: float = 1e-10
    ) -> EssentialSpectrumPrediction:
        cached = state.get("prediction")
        if isinstance(cached, EssentialSpectrumPrediction) and cached.grid_resolution == n_grid:
            return cached
        prediction = predict_essential_spectrum(self._circle("essential"), n_grid, refine_tol)
        state["prediction"] = prediction
        return prediction

    def _task_essential(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        task = self._task_config(EssentialTask, context)
        a = self._circle("essential")
        prediction = self._prediction(state, task.n_grid, task.refine_tol)
        coverage = {
            K: band_coverage(dec.eigenvalues, prediction.intervals)
            for K, dec in zip(self.config.K_list, self._decompositions(state, self.config.K_list), strict=True)
        }
        samples = symbol_range_samples(a)
        payload = {
            "prediction": prediction.model_dump(),
            "coverage": {str(K): c.model_dump() for K, c in coverage.items()},
            "range_samples": {side: [min(values), max(values)] for side, values in samples.items()},
        }
        top = coverage[self.config.K_max]
        headline = (
            f"essential spectrum {_format_intervals(prediction.intervals)}; "
            f"Hausdorff distance {top.hausdorff:.3g} at K={self.config.K_max}"
        )
        outcome = TaskOutcome(
            task="essential",
            headline=headline,
            files=[self.fs.write_json("essential.json", payload)],
            metrics={"hausdorff": top.hausdorff, "critical_set": prediction.critical_set},
        )
        return self._record(state, outcome)

    def _task_stability(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        task = self._task_config(StabilityTask, context)
        a = self._circle("stability")
        ks = task.K_list or sorted(self.config.K_list)
        result = truncation_stability(
            a, self.config.t, ks, task.match_tol, decompositions=self._decompositions(state, ks)
        )
        state["stability"] = result
        values = ", ".join(format_value(v) for v in result.values) or "none"
        headline = f"persistent eigenvalue(s): {values}"
        if result.values and a.is_real():
            prediction = self._prediction(state)
            inside = [v for v in result.values if prediction.contains(v)]
            if inside:
                headline += f" ({len(inside)} inside the band {_format_intervals(prediction.intervals)})"
        outcome = TaskOutcome(
            task="stability",
            headline=headline,
            files=[self.fs.write_json("stability.json", result.model_dump())],
            metrics={"persistent": result.values},
        )
        return self._record(state, outcome)

    def _task_spectrum(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        task = self._task_config(SpectrumTask, context)
        decs = self._decompositions(state, self.config.K_list)
        stability = state.get("stability")
        persistent = stability.values if isinstance(stability, StabilityResult) else []
        rows: list[tuple[float, str, float, int]] = []
        metrics: dict[str, Any] = {}
        if self.geometry == "circle":
            prediction = self._prediction(state)
            for dec in decs:
                report = classify_spectrum(dec, prediction, task.band_tol, persistent)
                rows.extend((e.value, e.label, e.localization, dec.K) for e in report.entries)
                metrics[f"counts_K{dec.K}"] = report.counts()
            top = metrics[f"counts_K{decs[-1].K}"]
            headline = f"K={decs[-1].K}: " + ", ".join(f"{count} {label}" for label, count in top.items() if count)
        else:
            for dec in decs:
                rows.extend((e.value, e.label, e.localization, dec.K) for e in unclassified_spectrum(dec).entries)
            zero = self._zero_mode(decs[0])
            metrics.update(zero)
            headline = (
                f"eigenvalue {format_value(zero['eigenvalue'])} with overlap {zero['overlap']:.12f} "
                f"on e_(0,0) at K={decs[0].K}"
            )
        files = [self.fs.write_csv("spectrum.csv", ("lambda", "label", "localization", "K"), rows)]
        if task.export_matrices:
            files.extend(self._export_matrices())
        outcome = TaskOutcome(task="spectrum", headline=headline, files=files, metrics=metrics)
        return self._record(state, outcome)

    def _export_matrices(self) -> list[str]:
        files = []
        for K in self.config.K_list:
            if isinstance(self.symbol, CircleSymbol):
                matrix = quantize_circle(self.symbol, K, self.config.t)
            else:
                matrix = quantize_torus2_weyl(self.symbol, K)
            files.append(self.fs.write_json(f"matrix_K{K}.json", matrix.to_descriptor()))
            files.append(self.fs.write_text(f"matrix_K{K}.csv", matrix.to_csv()))
        return files

    @staticmethod
    def _zero_mode(dec: SpectralDecomposition) -> dict[str, float]:
        """The eigenvalue nearest 0 and the overlap of its eigenvector with the constant mode."""
        index = int(np.argmin(np.abs(dec.eigenvalues)))
        origin = torus_index(dec.K, 0, 0) if dec.geometry == "torus2" else dec.K
        return {
            "eigenvalue": float(dec.eigenvalues[index]),
            "overlap": float(abs(dec.eigenvectors[origin, index])),
        }

    def _task_density(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        task = self._task_config(DensityTask, context)
        K = task.K or self.config.K_max
        (dec,) = self._decompositions(state, [K])
        u = probe_vector(task.probe, K, self.geometry, self.config.seed)
        grid = np.linspace(task.window[0], task.window[1], task.points)
        density = spectral_density(dec, u, grid, task.eps)
        survival = survival_average(dec, u)
        summary = {
            "K": K,
            "probe": task.probe,
            "eps": density.eps,
            "mean_spacing": density.mean_spacing,
            "below_floor": density.below_floor,
            "survival_average": survival,
        }
        files = [
            self.fs.write_csv(
                "density.csv", ("lambda", "rho"), zip(grid.tolist(), density.values.tolist(), strict=True)
            ),
            self.fs.write_json("density.json", summary),
        ]
        outcome = TaskOutcome(
            task="density",
            headline=f"probe {task.probe} at K={K}: eps={density.eps:.3g}, survival average {survival:.4g}",
            files=files,
            metrics=summary,
        )
        return self._record(state, outcome)

    def _task_ordergap(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        task = self._task_config(OrderGapTask, context)
        a = self._circle("ordergap")
        K = task.K or self.config.K_max
        ns = task.n or [max(1, K // 8), max(1, K // 4)]
        norms = {n: order_gap_norm(a, K, n) for n in ns}
        ratios = {f"{n1}/{n2}": (norms[n1] / norms[n2] if norms[n2] > 0 else None) for n1, n2 in pairwise(ns)}
        bound = a.sup_bound()
        op_norms = {K2: op_norm(quantize_circle(a, K2, self.config.t)) for K2 in task.norm_K_list or self.config.K_list}
        violations = [K2 for K2, value in op_norms.items() if value > bound + NORM_BOUND_SLACK]
        payload = {
            "K": K,
            "gap_norms": {str(n): v for n, v in norms.items()},
            "ratios": ratios,
            "coefficient_bound": bound,
            "op_norms": {str(K2): v for K2, v in op_norms.items()},
        }
        outcome = TaskOutcome(
            task="ordergap",
            status="FAIL" if violations else "PASS",
            headline=(
                f"gap norms {', '.join(f'n={n}: {v:.3e}' for n, v in norms.items())}; "
                f"op norm bound {bound:.6g} {'violated at K=' + str(violations) if violations else 'holds'}"
            ),
            files=[self.fs.write_json("ordergap.json", payload)],
            metrics=payload,
        )
        return self._record(state, outcome)

    def _task_classcheck(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        task = self._task_config(ClassCheckTask, context)
        a = self._circle("classcheck")
        m = a.declared_order if task.m is None else task.m
        estimate = estimate_symbol_class(a, m, task.alpha_max, task.beta_max)
        outcome = TaskOutcome(
            task="classcheck",
            status="PASS" if estimate.bounded else "FAIL",
            headline=f"S^{m:g} seminorms {'bounded' if estimate.bounded else 'unbounded'} up to "
            f"alpha={task.alpha_max}, beta={task.beta_max}",
            files=[self.fs.write_json("classcheck.json", estimate.model_dump())],
            metrics={"bounded": estimate.bounded},
        )
        return self._record(state, outcome)

    def _task_hscheck(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        task = self._task_config(HSCheckTask, context)
        a = self._circle("hscheck")
        K = task.K or self.config.K_min
        H = quantize_circle(a, K, self.config.t)
        chi = build_cutoff(*task.interval, *task.enclosing)
        quad = QuadratureGrid(nx=task.nx, ny=task.ny, workers=task.workers)
        (dec,) = self._decompositions(state, [K])
        result = compare_routes(H, chi, task.taylor_order, quad, task.refine, task.y_scale, dec)
        result.decay_exponents = {n: almost_analytic(chi, n, task.y_scale).decay_exponent() for n in task.decay_orders}
        slow = [n for n, slope in result.decay_exponents.items() if slope < n - DECAY_SLACK]
        failed = result.max_abs > HS_TOLERANCE or bool(slow)
        outcome = TaskOutcome(
            task="hscheck",
            status="FAIL" if failed else "PASS",
            headline=f"max |hs - eig| = {result.max_abs:.3e} at K={K}, N={task.taylor_order}"
            + (f"; decay too slow for N={slow}" if slow else ""),
            files=[self.fs.write_json("hscheck.json", result.model_dump())],
            metrics={"max_abs": result.max_abs, "refinement_ratio": result.refinement_ratio},
        )
        return self._record(state, outcome)

    def _task_mourre(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        task = self._task_config(MourreTask, context)
        a = self._circle("mourre")
        K = task.K or self.config.K_max
        report = mourre_check_selfadjoint(a, task.interval, task.enclosing, K, task.cutoff_order, task.route)
        residuals = {str(K2): commutator_symbol_residual(a, K2) for K2 in task.residual_K}
        payload = {**report.model_dump(), "residual_by_K": residuals}
        outcome = TaskOutcome(
            task="mourre",
            status=report.verdict,
            headline=(
                f"C = {report.C:.6g}, lambda_min(K/2) = {report.lambda_min[-1].value:.3e} at K={K}: {report.verdict}"
            ),
            files=[self.fs.write_json("mourre.json", payload)],
            metrics={"C": report.C, "lambda_min": report.lambda_min[-1].value, "residual": report.residual},
        )
        return self._record(state, outcome)

    def _task_unitary(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        task = self._task_config(UnitaryTask, context)
        a = self._circle("unitary")
        K = task.K or self.config.K_max
        report = mourre_check_unitary(a, task.arc, K)
        defects = {str(n): unitarity_defect(a, K, n) for n in task.defect_n if n < K}
        payload = {**report.model_dump(), "unitarity_defect": defects}
        extras = report.unitary_extras
        coverage = extras.arc_coverage if extras is not None else float("nan")
        outcome = TaskOutcome(
            task="unitary",
            status=report.verdict,
            headline=f"C = {report.C:.6g}, arc coverage {coverage:.3g}, verdict {report.verdict} at K={K}",
            files=[self.fs.write_json("unitary.json", payload)],
            metrics={"C": report.C, "defects": defects, "arc_coverage": coverage},
        )
        return self._record(state, outcome)
