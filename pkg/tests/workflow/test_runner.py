import pytest

from psdo.workflow import (
    FAILURES_KEY,
    LocalWorkflowRunner,
    ThreadWorkflowRunner,
    WorkflowInterceptorRegistry,
    WorkflowStep,
    available_runners,
    register_workflow_runner,
    resolve_workflow_runner,
    run_steps,
)


def _put(key, value):
    def handler(state, context):
        return {**state, key: value}

    return handler


async def _async_put(state, context):
    return {**state, "async": context["step_id"]}


def _boom(state, context):
    raise RuntimeError("no convergence")


class TestRunSteps:
    async def test_sync_and_async_handlers(self):
        steps = [
            WorkflowStep(step_id="a", role="r", handler=_put("x", 1)),
            WorkflowStep(step_id="b", role="r", handler=_async_put),
        ]
        state = await run_steps("w", steps, {})
        assert state == {"x": 1, "async": "b", FAILURES_KEY: {}}

    async def test_step_config_reaches_the_handler(self):
        seen = {}

        def handler(state, context):
            seen.update(context)
            return state

        step = WorkflowStep(step_id="a", role="r", handler=handler, config={"K": 32})
        await run_steps("w", [step], {}, {"scenario": "s"})
        assert seen == {"scenario": "s", "step_id": "a", "step_config": {"K": 32}}

    async def test_optional_failure_is_recorded(self):
        steps = [
            WorkflowStep(step_id="a", role="r", handler=_boom, optional=True),
            WorkflowStep(step_id="b", role="r", handler=_put("after", True)),
        ]
        state = await run_steps("w", steps, {})
        assert state[FAILURES_KEY] == {"a": "RuntimeError: no convergence"}
        assert state["after"] is True

    async def test_required_failure_propagates(self):
        with pytest.raises(RuntimeError, match="no convergence"):
            await run_steps("w", [WorkflowStep(step_id="a", role="r", handler=_boom)], {})

    async def test_missing_state_key(self):
        step = WorkflowStep(step_id="a", role="r", handler=_put("x", 1), requires={"data"})
        with pytest.raises(KeyError, match="missing data"):
            await run_steps("w", [step], {})

    async def test_handler_must_return_a_mapping(self):
        step = WorkflowStep(step_id="a", role="r", handler=lambda state, context: None)
        with pytest.raises(TypeError, match="must return a mapping"):
            await run_steps("w", [step], {})


class TestInterceptors:
    async def test_order_and_error_hooks(self):
        calls = []
        registry = WorkflowInterceptorRegistry()
        registry.register_before(lambda ctx, state: calls.append(("before", ctx.step_id)))
        registry.register_after(lambda ctx, state: calls.append(("after", ctx.step_id)))

        async def on_error(ctx, state, error):
            calls.append(("error", ctx.step_id, str(error)))

        registry.register_on_error(on_error)
        steps = [
            WorkflowStep(step_id="a", role="r", handler=_put("x", 1)),
            WorkflowStep(step_id="b", role="r", handler=_boom, optional=True),
        ]
        await run_steps("w", steps, {}, interceptor_registry=registry)
        assert calls == [
            ("before", "a"),
            ("after", "a"),
            ("before", "b"),
            ("error", "b", "no convergence"),
        ]

    async def test_dispose(self):
        calls = []
        registry = WorkflowInterceptorRegistry()
        handle = registry.register_before(lambda ctx, state: calls.append(ctx.step_id))
        assert handle.dispose() is True
        assert handle.dispose() is False
        await run_steps("w", [WorkflowStep(step_id="a", role="r", handler=_put("x", 1))], {}, interceptor_registry=registry)
        assert calls == []

    async def test_failing_hook_is_swallowed_unless_strict(self):
        def bad(ctx, state):
            raise ValueError("hook")

        steps = [WorkflowStep(step_id="a", role="r", handler=_put("x", 1))]
        lenient = WorkflowInterceptorRegistry()
        lenient.register_before(bad)
        assert (await run_steps("w", steps, {}, interceptor_registry=lenient))["x"] == 1

        strict = WorkflowInterceptorRegistry(strict=True)
        strict.register_before(bad)
        with pytest.raises(ValueError, match="hook"):
            await run_steps("w", steps, {}, interceptor_registry=strict)

    def test_non_callable(self):
        with pytest.raises(TypeError, match="callable"):
            WorkflowInterceptorRegistry().register_before("nope")


class TestResolveRunner:
    def test_default_is_local(self):
        assert isinstance(resolve_workflow_runner(None), LocalWorkflowRunner)
        assert isinstance(resolve_workflow_runner(" Local "), LocalWorkflowRunner)

    def test_instance_passes_through(self):
        runner = LocalWorkflowRunner()
        assert resolve_workflow_runner(runner) is runner

    def test_unknown(self):
        with pytest.raises(ValueError, match="unknown workflow runner 'remote'"):
            resolve_workflow_runner("remote")

    def test_registered_factory(self):
        register_workflow_runner("inline", LocalWorkflowRunner)
        assert resolve_workflow_runner("inline").name == "local"

    def test_factory_must_build_a_runner(self):
        register_workflow_runner("broken", object)
        with pytest.raises(TypeError, match="did not return a WorkflowRunner"):
            resolve_workflow_runner("broken")

    def test_builtin_names(self):
        assert {"local", "thread"} <= set(available_runners())
        assert isinstance(resolve_workflow_runner("thread"), ThreadWorkflowRunner)


class TestThreadRunner:
    async def test_matches_local(self):
        steps = [
            WorkflowStep(step_id="a", role="r", handler=_put("x", 1)),
            WorkflowStep(step_id="b", role="r", handler=_async_put),
            WorkflowStep(step_id="c", role="r", handler=_boom, optional=True),
        ]
        local = await LocalWorkflowRunner().run("w", steps, {})
        threaded = await ThreadWorkflowRunner().run("w", steps, {})
        assert threaded == local
        assert threaded[FAILURES_KEY] == {"c": "RuntimeError: no convergence"}

    async def test_required_failure_crosses_the_thread(self):
        with pytest.raises(RuntimeError, match="no convergence"):
            await ThreadWorkflowRunner().run("w", [WorkflowStep(step_id="a", role="r", handler=_boom)], {})
