from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

TaskStatus = Literal["PASS", "FAIL"]


class TaskOutcome(BaseModel):
    task: str
    status: TaskStatus = "PASS"
    headline: str = ""
    files: list[str] = Field(default_factory=list)
    metrics: dict[str, Any] = Field(default_factory=dict)


class ScenarioResult(BaseModel):
    name: str
    output_dir: str
    outcomes: list[TaskOutcome]
    summary_path: str

    @property
    def failed(self) -> list[str]:
        return [o.task for o in self.outcomes if o.status == "FAIL"]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def outcome(self, task: str) -> TaskOutcome:
        for o in self.outcomes:
            if o.task == task:
                return o
        msg = f"no outcome for task '{task}'"
        raise KeyError(msg)
