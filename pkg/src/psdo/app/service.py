from __future__ import annotations

import copy
import json
import logging
import time
from collections.abc import Callable, Mapping
from typing import Any

from pydantic import ValidationError

from psdo.app.models import ScenarioResult, TaskOutcome
from psdo.app.presets import build_symbol, get_preset, pinned_values, symbol_geometry
from psdo.app.settings import ScenarioConfig, parse_scenario
from psdo.app.tasks import ScenarioTasksMixin, format_value
from psdo.blob.local_fs import LocalFS
from psdo.errors import ScenarioValidationError
from psdo.symbols import CircleSymbol
from psdo.workflow.interceptor import WorkflowInterceptorHandle, WorkflowInterceptorRegistry, WorkflowStepContext
from psdo.workflow.pipeline import PipelineManager
from psdo.workflow.runner import WorkflowRunner, resolve_workflow_runner
from psdo.workflow.step import FAILURES_KEY, WorkflowContext, WorkflowState, WorkflowStep

logger = logging.getLogger(__name__)

SCENARIO_PIPELINE = "scenario"
TORUS_TASKS = frozenset({"spectrum", "density"})
# dense torus sections have (2K + 1)^2 rows
TORUS_MAX_K = 24


def semantic_issues(cfg: ScenarioConfig) -> list[tuple[str, str]]:
    """Checks that need the built symbol: sizes against the band width and tasks against the geometry."""
    try:
        symbol = build_symbol(cfg.symbol)
    except ValueError as e:
        return [("/symbol", str(e))]
    torus = not isinstance(symbol, CircleSymbol)
    bandwidth = max(symbol.bandwidth) if not isinstance(symbol, CircleSymbol) else symbol.bandwidth

    issues: list[tuple[str, str]] = []

    def check_size(pointer: str, K: int) -> None:
        if K < bandwidth:
            issues.append((pointer, f"K={K} is smaller than the symbol band width {bandwidth}"))
        if torus and K > TORUS_MAX_K:
            issues.append((pointer, f"K={K} exceeds {TORUS_MAX_K} for a dense 2-torus section"))

    for i, K in enumerate(cfg.K_list):
        check_size(f"/K_list/{i}", K)
    for name in cfg.tasks.requested():
        task = getattr(cfg.tasks, name)
        if torus and name not in TORUS_TASKS:
            issues.append((f"/tasks/{name}", f"task '{name}' needs a circle symbol"))
            continue
        K = getattr(task, "K", None)
        if K is not None:
            check_size(f"/tasks/{name}/K", K)

    stability = cfg.tasks.stability
    if stability is not None and stability.K_list is None and len(set(cfg.K_list)) < 3:
        issues.append(("/tasks/stability/K_list", "stability needs at least 3 distinct sizes; set K_list here"))
    ordergap = cfg.tasks.ordergap
    if ordergap is not None and ordergap.n is not None:
        K = ordergap.K or cfg.K_max
        issues.extend(
            (f"/tasks/ordergap/n/{i}", f"n={n} must be smaller than K={K}")
            for i, n in enumerate(ordergap.n)
            if n >= K
        )
    return issues


def _without_broken_sections(
    source: str | Mapping[str, Any], issues: list[tuple[str, str]]
) -> ScenarioConfig | None:
    """The document minus every top-level key or task named by ``issues``, if that still parses."""
    try:
        document = copy.deepcopy(dict(json.loads(source) if isinstance(source, str) else source))
    except (TypeError, ValueError):
        return None
    for pointer, _ in issues:
        parts = pointer.split("/")[1:]
        if not parts:
            return None
        tasks = document.get("tasks")
        if parts[0] == "tasks" and len(parts) > 1 and isinstance(tasks, dict):
            tasks.pop(parts[1], None)
        else:
            document.pop(parts[0], None)
    try:
        return ScenarioConfig.model_validate(document)
    except ValidationError:
        return None


def validate(source: str | Mapping[str, Any] | ScenarioConfig) -> ScenarioConfig:
    """Structural and semantic validation; raises one ``ScenarioValidationError`` listing every issue.

    When the document has structural problems, the semantic checks still run on the
    sections that parsed.
    """
    try:
        cfg = parse_scenario(source)
    except ScenarioValidationError as e:
        if isinstance(source, ScenarioConfig):
            raise
        partial = _without_broken_sections(source, e.issues)
        extra = semantic_issues(partial) if partial is not None else []
        raise ScenarioValidationError([*e.issues, *(i for i in extra if i not in e.issues)]) from e
    issues = semantic_issues(cfg)
    if issues:
        raise ScenarioValidationError(issues)
    return cfg


class ScenarioService(ScenarioTasksMixin):
    def __init__(
        self,
        config: str | Mapping[str, Any] | ScenarioConfig,
        *,
        output_dir: str | None = None,
        jobs: int | None = None,
        workflow_runner: WorkflowRunner | str | None = None,
        strict_interceptors: bool = False,
    ):
        cfg = self._validate_config(config)
        overrides: dict[str, Any] = {}
        if output_dir is not None:
            overrides["output_dir"] = output_dir
        if jobs is not None:
            overrides["jobs"] = jobs
        self.config = validate({**cfg.model_dump(by_alias=True), **overrides}) if overrides else cfg

        self.symbol = build_symbol(self.config.symbol)
        self.geometry = symbol_geometry(self.config.symbol)
        self.fs = LocalFS(self.config.output_dir)

        self._workflow_interceptors = WorkflowInterceptorRegistry(strict=strict_interceptors)
        self._workflow_runner = resolve_workflow_runner(workflow_runner)
        self._step_started: dict[str, float] = {}
        self._register_builtin_interceptors()

        self._pipelines = PipelineManager()
        self._register_pipelines()

    @staticmethod
    def _validate_config(config: str | Mapping[str, Any] | ScenarioConfig) -> ScenarioConfig:
        if isinstance(config, ScenarioConfig):
            issues = semantic_issues(config)
            if issues:
                raise ScenarioValidationError(issues)
            return config
        return validate(config)

    @property
    def workflow_runner(self) -> WorkflowRunner:
        return self._workflow_runner

    def _register_builtin_interceptors(self) -> None:
        def started(ctx: WorkflowStepContext, state: WorkflowState) -> None:
            self._step_started[ctx.step_id] = time.perf_counter()
            logger.info("%s: step '%s' started", ctx.workflow_name, ctx.step_id)

        def finished(ctx: WorkflowStepContext, state: WorkflowState) -> None:
            elapsed = time.perf_counter() - self._step_started.pop(ctx.step_id, time.perf_counter())
            logger.info("%s: step '%s' finished in %.3fs", ctx.workflow_name, ctx.step_id, elapsed)

        def failed(ctx: WorkflowStepContext, state: WorkflowState, error: Exception) -> None:
            self._step_started.pop(ctx.step_id, None)
            logger.error("%s: step '%s' failed: %s", ctx.workflow_name, ctx.step_id, error)

        self._workflow_interceptors.register_before(started, name="log_start")
        self._workflow_interceptors.register_after(finished, name="log_finish")
        self._workflow_interceptors.register_on_error(failed, name="log_failure")

    def _register_pipelines(self) -> None:
        steps = [
            *self._build_task_steps(),
            WorkflowStep(
                step_id="summary",
                role="report",
                handler=self._write_summary,
                requires={"outcomes"},
                produces={"summary_path"},
            ),
        ]
        self._pipelines.register(SCENARIO_PIPELINE, steps, initial_state_keys={"decompositions", "outcomes"})

    async def _run_workflow(self, workflow_name: str, initial_state: WorkflowState) -> WorkflowState:
        steps = self._pipelines.build(workflow_name)
        runner_context = {"workflow_name": workflow_name, "scenario": self.config.name}
        return await self._workflow_runner.run(
            workflow_name,
            steps,
            initial_state,
            runner_context,
            interceptor_registry=self._workflow_interceptors,
        )

    async def run_scenario(self) -> ScenarioResult:
        logger.info(
            "scenario '%s': tasks %s, K=%s, output %s",
            self.config.name,
            self.config.tasks.requested(),
            self.config.K_list,
            self.fs.base,
        )
        state = await self._run_workflow(SCENARIO_PIPELINE, {"decompositions": {}, "outcomes": []})
        result = ScenarioResult(
            name=self.config.name,
            output_dir=str(self.fs.base),
            outcomes=state["outcomes"],
            summary_path=state["summary_path"],
        )
        if result.failed:
            logger.warning("scenario '%s': failed tasks %s", self.config.name, result.failed)
        return result

    def _collect_outcomes(self, state: WorkflowState) -> list[TaskOutcome]:
        """Recorded outcomes plus one FAIL entry per step that raised, in pipeline order."""
        outcomes = {o.task: o for o in state["outcomes"]}
        for step_id, message in state.get(FAILURES_KEY, {}).items():
            outcomes.setdefault(step_id, TaskOutcome(task=step_id, status="FAIL", headline=message))
        order = {step_id: i for i, step_id in enumerate(self._pipelines.step_ids(SCENARIO_PIPELINE))}
        return sorted(outcomes.values(), key=lambda o: order.get(o.task, len(order)))

    def _write_summary(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        outcomes = self._collect_outcomes(state)
        cfg = self.config
        lines = [f"# Scenario `{cfg.name}`", "", "## Symbol", ""]
        if cfg.symbol.preset is not None:
            lines.append(f"- preset: `{cfg.symbol.preset}` ({get_preset(cfg.symbol.preset).description})")
            pins = pinned_values(cfg.symbol)
            if pins:
                lines.append("- pinned values:")
                lines.extend(f"  - {key}: `{value}`" for key, value in pins.items())
        else:
            lines.extend(["| l | profile |", "|---|---------|"])
            lines.extend(f"| {c.mode} | `{c.profile}` |" for c in cfg.symbol.coefficients or [])
        lines.extend([
            "",
            f"- geometry: {self.geometry}",
            f"- quantization t: {format_value(cfg.t)}",
            f"- K_list: {cfg.K_list}",
            f"- seed: {cfg.seed}",
            "",
            "## Tasks",
            "",
            "| task | status | result |",
            "|------|--------|--------|",
        ])
        lines.extend(f"| {o.task} | {o.status} | {o.headline.replace('|', '/')} |" for o in outcomes)
        failed = [o.task for o in outcomes if o.status == "FAIL"]
        lines.extend(["", f"**{'FAIL: ' + ', '.join(failed) if failed else 'PASS'}**", ""])

        if isinstance(self.symbol, CircleSymbol):
            self.fs.write_json("symbol.json", self.symbol.to_document())
        state["outcomes"] = outcomes
        state["summary_path"] = self.fs.write_text("summary.md", "\n".join(lines))
        return state

    def intercept_before_task(self, fn: Callable[..., Any], *, name: str | None = None) -> WorkflowInterceptorHandle:
        """Called with ``(step_context: WorkflowStepContext, state)`` before each task step."""
        return self._workflow_interceptors.register_before(fn, name=name)

    def intercept_after_task(self, fn: Callable[..., Any], *, name: str | None = None) -> WorkflowInterceptorHandle:
        return self._workflow_interceptors.register_after(fn, name=name)

    def intercept_on_error_task(self, fn: Callable[..., Any], *, name: str | None = None) -> WorkflowInterceptorHandle:
        """Called with ``(step_context, state, error)`` when a task step raises."""
        return self._workflow_interceptors.register_on_error(fn, name=name)

    def configure_task(self, *, task: str, configs: Mapping[str, Any]) -> int:
        return self._pipelines.config_step(SCENARIO_PIPELINE, task, dict(configs))

    def insert_step_after(self, *, target_step_id: str, new_step: WorkflowStep) -> int:
        return self._pipelines.insert_after(SCENARIO_PIPELINE, target_step_id, new_step)

    def remove_step(self, *, target_step_id: str) -> int:
        return self._pipelines.remove_step(SCENARIO_PIPELINE, target_step_id)
