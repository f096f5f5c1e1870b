from __future__ import annotations

import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Any

from psdo.workflow.step import WorkflowStep


@dataclass
class PipelineRevision:
    name: str
    revision: int
    steps: list[WorkflowStep]
    created_at: float
    initial_state_keys: set[str] = field(default_factory=set)


class PipelineManager:
    """Named step lists, validated on every change so each ``requires`` is satisfied upstream."""

    def __init__(self) -> None:
        self._pipelines: dict[str, list[PipelineRevision]] = {}

    def register(self, name: str, steps: Iterable[WorkflowStep], *, initial_state_keys: set[str] | None = None) -> None:
        steps_list = list(steps)
        keys = set(initial_state_keys or set())
        self._validate_steps(steps_list, keys)
        self._pipelines[name] = [
            PipelineRevision(name=name, revision=1, steps=steps_list, created_at=time.time(), initial_state_keys=keys)
        ]

    def build(self, name: str) -> list[WorkflowStep]:
        return [step.copy() for step in self._current_revision(name).steps]

    def step_ids(self, name: str) -> list[str]:
        return [step.step_id for step in self._current_revision(name).steps]

    def config_step(self, name: str, step_id: str, configs: dict[str, Any]) -> int:
        def mutator(steps: list[WorkflowStep]) -> None:
            step = self._find(name, steps, step_id)
            step.config = {**step.config, **configs}

        return self._mutate(name, mutator)

    def insert_after(self, name: str, target_step_id: str, new_step: WorkflowStep) -> int:
        def mutator(steps: list[WorkflowStep]) -> None:
            steps.insert(steps.index(self._find(name, steps, target_step_id)) + 1, new_step)

        return self._mutate(name, mutator)

    def remove_step(self, name: str, target_step_id: str) -> int:
        def mutator(steps: list[WorkflowStep]) -> None:
            steps.remove(self._find(name, steps, target_step_id))

        return self._mutate(name, mutator)

    @staticmethod
    def _find(name: str, steps: list[WorkflowStep], step_id: str) -> WorkflowStep:
        for step in steps:
            if step.step_id == step_id:
                return step
        msg = f"step '{step_id}' not found in pipeline '{name}'"
        raise KeyError(msg)

    def _mutate(self, name: str, mutator: Callable[[list[WorkflowStep]], None]) -> int:
        current = self._current_revision(name)
        steps = [step.copy() for step in current.steps]
        mutator(steps)
        self._validate_steps(steps, current.initial_state_keys)
        revision = PipelineRevision(
            name=name,
            revision=current.revision + 1,
            steps=steps,
            created_at=time.time(),
            initial_state_keys=set(current.initial_state_keys),
        )
        self._pipelines[name].append(revision)
        return revision.revision

    def _current_revision(self, name: str) -> PipelineRevision:
        revisions = self._pipelines.get(name)
        if not revisions:
            msg = f"pipeline '{name}' not registered"
            raise KeyError(msg)
        return revisions[-1]

    @staticmethod
    def _validate_steps(steps: list[WorkflowStep], initial_state_keys: set[str]) -> None:
        seen: set[str] = set()
        available = set(initial_state_keys)
        for step in steps:
            if step.step_id in seen:
                msg = f"duplicate step_id '{step.step_id}'"
                raise ValueError(msg)
            seen.add(step.step_id)
            missing = step.requires - available
            if missing:
                msg = (
                    f"step '{step.step_id}' requires {', '.join(sorted(missing))}, "
                    "which no earlier step produces and the initial state does not carry"
                )
                raise ValueError(msg)
            available.update(step.produces)
