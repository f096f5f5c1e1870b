from __future__ import annotations

import inspect
import logging
from collections.abc import Awaitable, Callable, Mapping
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from psdo.workflow.interceptor import WorkflowInterceptorRegistry

logger = logging.getLogger(__name__)

WorkflowState = dict[str, Any]
WorkflowContext = Mapping[str, Any] | None
WorkflowHandler = Callable[[WorkflowState, WorkflowContext], Awaitable[WorkflowState] | WorkflowState]

FAILURES_KEY = "failures"


@dataclass
class WorkflowStep:
    """One unit of a scenario pipeline.

    ``optional`` steps do not abort the run when they raise: the error message is stored
    under ``state["failures"][step_id]`` and the next step starts from the previous state.
    """

    step_id: str
    role: str
    handler: WorkflowHandler
    description: str = ""
    requires: set[str] = field(default_factory=set)
    produces: set[str] = field(default_factory=set)
    config: dict[str, Any] = field(default_factory=dict)
    optional: bool = False

    def copy(self) -> WorkflowStep:
        return replace(self, requires=set(self.requires), produces=set(self.produces), config=dict(self.config))

    async def run(self, state: WorkflowState, context: WorkflowContext) -> WorkflowState:
        result = self.handler(state, context)
        if inspect.isawaitable(result):
            result = await result
        if not isinstance(result, Mapping):
            msg = f"step '{self.step_id}' must return a mapping, got {type(result).__name__}"
            raise TypeError(msg)
        return dict(result)


async def run_steps(
    name: str,
    steps: list[WorkflowStep],
    initial_state: WorkflowState,
    context: WorkflowContext = None,
    interceptor_registry: WorkflowInterceptorRegistry | None = None,
) -> WorkflowState:
    from psdo.workflow.interceptor import WorkflowStepContext, run_interceptors

    hooks = interceptor_registry.snapshot() if interceptor_registry else None
    strict = interceptor_registry.strict if interceptor_registry else False

    state = dict(initial_state)
    state.setdefault(FAILURES_KEY, {})
    for step in steps:
        missing = step.requires - state.keys()
        if missing:
            msg = f"pipeline '{name}' is missing {', '.join(sorted(missing))} before step '{step.step_id}'"
            raise KeyError(msg)
        step_context: dict[str, Any] = dict(context) if context else {}
        step_context["step_id"] = step.step_id
        if step.config:
            step_context["step_config"] = step.config
        hook_ctx = WorkflowStepContext(
            workflow_name=name, step_id=step.step_id, step_role=step.role, step_context=step_context
        )

        if hooks:
            await run_interceptors(hooks.before, hook_ctx, state, strict=strict)
        try:
            state = await step.run(state, step_context)
        except Exception as e:
            if hooks:
                await run_interceptors(hooks.on_error, hook_ctx, state, e, strict=strict, reverse=True)
            if not step.optional:
                raise
            logger.warning("step '%s' failed: %s", step.step_id, e)
            state[FAILURES_KEY] = {**state.get(FAILURES_KEY, {}), step.step_id: f"{type(e).__name__}: {e}"}
            continue
        if hooks:
            await run_interceptors(hooks.after, hook_ctx, state, strict=strict, reverse=True)

    return state
