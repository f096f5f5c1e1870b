from psdo.workflow.interceptor import WorkflowInterceptorHandle, WorkflowInterceptorRegistry, WorkflowStepContext
from psdo.workflow.pipeline import PipelineManager, PipelineRevision
from psdo.workflow.runner import (
    LocalWorkflowRunner,
    ThreadWorkflowRunner,
    WorkflowRunner,
    available_runners,
    register_workflow_runner,
    resolve_workflow_runner,
)
from psdo.workflow.step import FAILURES_KEY, WorkflowContext, WorkflowState, WorkflowStep, run_steps

__all__ = [
    "FAILURES_KEY",
    "LocalWorkflowRunner",
    "PipelineManager",
    "PipelineRevision",
    "ThreadWorkflowRunner",
    "WorkflowContext",
    "WorkflowInterceptorHandle",
    "WorkflowInterceptorRegistry",
    "WorkflowRunner",
    "WorkflowState",
    "WorkflowStep",
    "WorkflowStepContext",
    "available_runners",
    "register_workflow_runner",
    "resolve_workflow_runner",
    "run_steps",
]
