"""Pipeline runners.

``local`` awaits the steps on the caller's event loop. ``thread`` runs the whole pipeline
on a worker thread with its own loop, which keeps an embedding application responsive
while dense eigensolves hold the thread.
"""

from __future__ import annotations

import asyncio
import logging
import time
from collections.abc import Callable
from typing import TYPE_CHECKING, Protocol, runtime_checkable

from psdo.workflow.step import WorkflowContext, WorkflowState, WorkflowStep, run_steps

if TYPE_CHECKING:
    from psdo.workflow.interceptor import WorkflowInterceptorRegistry

logger = logging.getLogger(__name__)


@runtime_checkable
class WorkflowRunner(Protocol):
    name: str

    async def run(
        self,
        workflow_name: str,
        steps: list[WorkflowStep],
        initial_state: WorkflowState,
        context: WorkflowContext = None,
        interceptor_registry: WorkflowInterceptorRegistry | None = None,
    ) -> WorkflowState: ...


class LocalWorkflowRunner:
    name = "local"

    async def run(
        self,
        workflow_name: str,
        steps: list[WorkflowStep],
        initial_state: WorkflowState,
        context: WorkflowContext = None,
        interceptor_registry: WorkflowInterceptorRegistry | None = None,
    ) -> WorkflowState:
        started = time.perf_counter()
        state = await run_steps(workflow_name, steps, initial_state, context, interceptor_registry)
        logger.debug("%s: %d steps in %.3fs", workflow_name, len(steps), time.perf_counter() - started)
        return state


class ThreadWorkflowRunner(LocalWorkflowRunner):
    name = "thread"

    async def run(
        self,
        workflow_name: str,
        steps: list[WorkflowStep],
        initial_state: WorkflowState,
        context: WorkflowContext = None,
        interceptor_registry: WorkflowInterceptorRegistry | None = None,
    ) -> WorkflowState:
        local = super().run
        return await asyncio.to_thread(
            asyncio.run, local(workflow_name, steps, initial_state, context, interceptor_registry)
        )


RunnerFactory = Callable[[], WorkflowRunner]
WorkflowRunnerSpec = WorkflowRunner | str | None

_RUNNER_FACTORIES: dict[str, RunnerFactory] = {
    LocalWorkflowRunner.name: LocalWorkflowRunner,
    ThreadWorkflowRunner.name: ThreadWorkflowRunner,
}


def available_runners() -> list[str]:
    return sorted(_RUNNER_FACTORIES)


def register_workflow_runner(name: str, factory: RunnerFactory) -> None:
    key = name.strip().lower()
    if not key:
        msg = "workflow runner name must be non-empty"
        raise ValueError(msg)
    _RUNNER_FACTORIES[key] = factory


def resolve_workflow_runner(spec: WorkflowRunnerSpec) -> WorkflowRunner:
    """A runner instance, a registered runner name, or ``None`` for ``local``."""
    if isinstance(spec, WorkflowRunner):
        return spec
    key = (spec or LocalWorkflowRunner.name).strip().lower()
    try:
        runner = _RUNNER_FACTORIES[key]()
    except KeyError:
        msg = f"unknown workflow runner '{key}'; available: {', '.join(available_runners())}"
        raise ValueError(msg) from None
    if not isinstance(runner, WorkflowRunner):
        msg = f"factory for runner '{key}' did not return a WorkflowRunner"
        raise TypeError(msg)
    return runner
