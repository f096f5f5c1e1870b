from psdo.app.models import ScenarioResult, TaskOutcome
from psdo.app.presets import PRESETS, Preset, build_symbol, get_preset
from psdo.app.service import ScenarioService, validate
from psdo.app.settings import (
    ClassCheckTask,
    DensityTask,
    EssentialTask,
    HSCheckTask,
    MourreTask,
    OrderGapTask,
    ScenarioConfig,
    SpectrumTask,
    StabilityTask,
    SymbolConfig,
    TasksConfig,
    UnitaryTask,
)
from psdo.workflow.runner import (
    LocalWorkflowRunner,
    ThreadWorkflowRunner,
    WorkflowRunner,
    available_runners,
    register_workflow_runner,
    resolve_workflow_runner,
)

__all__ = [
    "PRESETS",
    "ClassCheckTask",
    "DensityTask",
    "EssentialTask",
    "HSCheckTask",
    "LocalWorkflowRunner",
    "MourreTask",
    "OrderGapTask",
    "Preset",
    "ScenarioConfig",
    "ScenarioResult",
    "ScenarioService",
    "SpectrumTask",
    "StabilityTask",
    "SymbolConfig",
    "TaskOutcome",
    "TasksConfig",
    "ThreadWorkflowRunner",
    "UnitaryTask",
    "WorkflowRunner",
    "available_runners",
    "build_symbol",
    "get_preset",
    "register_workflow_runner",
    "resolve_workflow_runner",
    "validate",
]
