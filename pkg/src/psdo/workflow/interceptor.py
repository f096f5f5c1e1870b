"""Before / after / on-error hooks around pipeline steps, called in registration order."""

from __future__ import annotations

import inspect
import itertools
import logging
import threading
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Literal

if TYPE_CHECKING:
    from psdo.workflow.step import WorkflowState

logger = logging.getLogger(__name__)

HookKind = Literal["before", "after", "on_error"]


@dataclass(frozen=True)
class WorkflowStepContext:
    workflow_name: str
    step_id: str
    step_role: str
    step_context: dict[str, Any]


@dataclass(frozen=True)
class _Hook:
    hook_id: int
    fn: Callable[..., Any]
    name: str | None


@dataclass(frozen=True)
class _HookSnapshot:
    before: tuple[_Hook, ...] = ()
    after: tuple[_Hook, ...] = ()
    on_error: tuple[_Hook, ...] = ()


class WorkflowInterceptorHandle:
    def __init__(self, registry: WorkflowInterceptorRegistry, hook_id: int) -> None:
        self._registry = registry
        self._hook_id = hook_id
        self._disposed = False

    def dispose(self) -> bool:
        """Unregister the hook; ``False`` if it was already gone."""
        if self._disposed:
            return False
        self._disposed = True
        return self._registry.remove(self._hook_id)


@dataclass
class WorkflowInterceptorRegistry:
    """Hooks receive ``(step_context, state)``; on-error hooks also get the exception.

    Hook failures are logged and swallowed unless ``strict``.
    """

    strict: bool = False
    _hooks: _HookSnapshot = field(default_factory=_HookSnapshot, init=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)
    _ids: itertools.count[int] = field(default_factory=lambda: itertools.count(1), init=False, repr=False)

    def register_before(self, fn: Callable[..., Any], *, name: str | None = None) -> WorkflowInterceptorHandle:
        return self.register("before", fn, name=name)

    def register_after(self, fn: Callable[..., Any], *, name: str | None = None) -> WorkflowInterceptorHandle:
        return self.register("after", fn, name=name)

    def register_on_error(self, fn: Callable[..., Any], *, name: str | None = None) -> WorkflowInterceptorHandle:
        return self.register("on_error", fn, name=name)

    def register(self, kind: HookKind, fn: Callable[..., Any], *, name: str | None = None) -> WorkflowInterceptorHandle:
        if not callable(fn):
            msg = "interceptor must be callable"
            raise TypeError(msg)
        if kind not in ("before", "after", "on_error"):
            msg = f"unknown interceptor kind '{kind}'"
            raise ValueError(msg)
        with self._lock:
            hook = _Hook(hook_id=next(self._ids), fn=fn, name=name)
            current = getattr(self._hooks, kind)
            self._hooks = _HookSnapshot(**{**self._as_dict(), kind: (*current, hook)})
        return WorkflowInterceptorHandle(self, hook.hook_id)

    def remove(self, hook_id: int) -> bool:
        with self._lock:
            before = self._as_dict()
            after = {kind: tuple(h for h in hooks if h.hook_id != hook_id) for kind, hooks in before.items()}
            self._hooks = _HookSnapshot(**after)
        return after != before

    def snapshot(self) -> _HookSnapshot:
        return self._hooks

    def _as_dict(self) -> dict[str, tuple[_Hook, ...]]:
        return {"before": self._hooks.before, "after": self._hooks.after, "on_error": self._hooks.on_error}


async def run_interceptors(
    hooks: tuple[_Hook, ...],
    step_context: WorkflowStepContext,
    state: WorkflowState,
    *extra: Any,
    strict: bool = False,
    reverse: bool = False,
) -> None:
    for hook in reversed(hooks) if reverse else hooks:
        try:
            result = hook.fn(step_context, state, *extra)
            if inspect.isawaitable(result):
                await result
        except Exception:
            if strict:
                raise
            logger.exception("workflow interceptor failed: %s", hook.name or hook.hook_id)
