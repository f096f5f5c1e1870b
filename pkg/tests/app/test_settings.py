import json

import pytest

from psdo.app.service import validate
from psdo.app.settings import ScenarioConfig, json_pointer, parse_scenario
from psdo.errors import ScenarioValidationError


def _issues(source) -> dict[str, str]:
    with pytest.raises(ScenarioValidationError) as exc:
        validate(source)
    return dict(exc.value.issues)


class TestParseScenario:
    def test_defaults(self):
        cfg = parse_scenario({"symbol": {"preset": "cosine"}})
        assert cfg.K_list == [64, 128, 256]
        assert cfg.t == 0.5
        assert cfg.tasks.requested() == []

    def test_preset_and_task_names_are_normalized(self):
        cfg = parse_scenario({"symbol": {"preset": " EXAMPLE13 "}, "tasks": ["Spectrum", "essential"]})
        assert cfg.symbol.preset == "example13"
        assert cfg.tasks.requested() == ["essential", "spectrum"]

    def test_task_order_is_fixed(self):
        cfg = parse_scenario({"symbol": {"preset": "cosine"}, "tasks": {"spectrum": {}, "stability": {}}})
        assert cfg.tasks.requested() == ["stability", "spectrum"]

    def test_inline_coefficients_use_l(self):
        cfg = parse_scenario({"symbol": {"coefficients": [{"l": 1, "profile": "0.5"}, {"l": -1, "profile": "0.5"}]}})
        assert [c.mode for c in cfg.symbol.coefficients] == [1, -1]

    def test_json_text(self):
        assert isinstance(parse_scenario(json.dumps({"symbol": {"preset": "dirstep"}})), ScenarioConfig)

    def test_invalid_json(self):
        with pytest.raises(ScenarioValidationError) as exc:
            parse_scenario("{symbol")
        ((pointer, message),) = exc.value.issues
        assert pointer == ""
        assert message.startswith("invalid JSON")

    def test_json_pointer_escapes(self):
        assert json_pointer(("tasks", "a/b", "c~d", 0)) == "/tasks/a~1b/c~0d/0"


class TestStructuralIssues:
    def test_profile_syntax(self):
        issues = _issues({"symbol": {"coefficients": [{"l": 0, "profile": "bump(0, 6, 4)"}]}})
        assert "/symbol/coefficients/0/profile" in issues

    def test_missing_interval(self):
        issues = _issues({"symbol": {"preset": "cosine"}, "tasks": {"mourre": {"enclosing": [-0.8, 0.8]}}})
        assert "/tasks/mourre/interval" in issues

    def test_duplicate_modes(self):
        issues = _issues({"symbol": {"coefficients": [{"l": 1, "profile": "1"}, {"l": 1, "profile": "2"}]}})
        assert issues["/symbol"].startswith("duplicate Fourier modes")

    def test_both_sources(self):
        issues = _issues({"symbol": {"preset": "cosine", "coefficients": [{"l": 0, "profile": "1"}]}})
        assert issues["/symbol"] == "give exactly one of 'preset' or 'coefficients'"

    def test_unknown_preset_and_task(self):
        issues = _issues({"symbol": {"preset": "sine"}, "tasks": ["spectrum", "plot"]})
        assert "/symbol/preset" in issues
        assert "/tasks/plot" in issues

    def test_every_problem_is_reported(self):
        issues = _issues({"symbol": {"preset": "cosine"}, "t": 2.0, "K_list": [], "extra": 1})
        assert {"/t", "/K_list", "/extra"} <= issues.keys()

    def test_nested_interval(self):
        issues = _issues({
            "symbol": {"preset": "cosine"},
            "tasks": {"hscheck": {"interval": [-0.5, 0.5], "enclosing": [-0.4, 0.8]}},
        })
        assert issues["/tasks/hscheck"].startswith("need a' < a < b < b'")

    def test_arc_width(self):
        issues = _issues({"symbol": {"preset": "scattering"}, "tasks": {"unitary": {"arc": [1.0, 0.5]}}})
        assert "/tasks/unitary/arc" in issues


class TestSemanticIssues:
    def test_reported_alongside_structural_problems(self):
        issues = _issues({
            "symbol": {"preset": "scattering"},
            "K_list": [8, 16],
            "tasks": {"mourre": {"enclosing": [-0.8, 0.8]}, "spectrum": {}},
        })
        assert "/tasks/mourre/interval" in issues
        assert issues["/K_list/0"] == "K=8 is smaller than the symbol band width 12"

    def test_broken_symbol_skips_the_semantic_pass(self):
        issues = _issues({"symbol": {"preset": "sine"}, "K_list": [1]})
        assert set(issues) == {"/symbol/preset"}

    def test_size_below_band_width(self):
        issues = _issues({"symbol": {"preset": "scattering"}, "K_list": [8, 16]})
        assert issues == {"/K_list/0": "K=8 is smaller than the symbol band width 12"}

    def test_torus_rejects_circle_tasks(self):
        issues = _issues({
            "symbol": {"preset": "example14"},
            "K_list": [8],
            "tasks": {"spectrum": {}, "mourre": {"interval": [-0.5, 0.5], "enclosing": [-0.8, 0.8]}},
        })
        assert issues == {"/tasks/mourre": "task 'mourre' needs a circle symbol"}

    def test_torus_size_cap(self):
        issues = _issues({"symbol": {"preset": "example14"}, "K_list": [8, 32]})
        assert "/K_list/1" in issues

    def test_stability_needs_three_sizes(self):
        issues = _issues({"symbol": {"preset": "example13"}, "K_list": [16, 32], "tasks": ["stability"]})
        assert "/tasks/stability/K_list" in issues

    def test_stability_sizes_of_its_own(self):
        cfg = validate({
            "symbol": {"preset": "example13"},
            "K_list": [16, 32],
            "tasks": {"stability": {"K_list": [16, 32, 64]}},
        })
        assert cfg.tasks.stability.K_list == [16, 32, 64]

    def test_ordergap_level_below_section(self):
        issues = _issues({"symbol": {"preset": "example13"}, "K_list": [32], "tasks": {"ordergap": {"n": [8, 32]}}})
        assert issues == {"/tasks/ordergap/n/1": "n=32 must be smaller than K=32"}
