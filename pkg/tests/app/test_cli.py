import json

from psdo.app.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, main


def _write(path, payload) -> str:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_presets(capsys):
    assert main(["presets"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "example13" in out
    assert "torus2" in out


def test_validate_ok(tmp_path, capsys):
    config = _write(tmp_path / "ok.json", {"name": "demo", "symbol": {"preset": "cosine"}, "tasks": ["essential"]})
    assert main(["validate", config]) == EXIT_OK
    assert "valid scenario 'demo' with tasks essential" in capsys.readouterr().out


def test_validate_reports_pointers(tmp_path, capsys):
    config = _write(tmp_path / "bad.json", {"symbol": {"coefficients": [{"l": 0, "profile": "bump(0, 6, 4)"}]}})
    assert main(["validate", config]) == EXIT_INVALID
    assert "/symbol/coefficients/0/profile:" in capsys.readouterr().err


def test_missing_config(tmp_path):
    assert main(["run", str(tmp_path / "absent.json")]) == EXIT_INVALID


def test_run(tmp_path, capsys):
    out_dir = tmp_path / "out"
    config = _write(
        tmp_path / "scenario.json",
        {"symbol": {"preset": "example13"}, "K_list": [16, 32, 64], "tasks": ["stability"]},
    )
    assert main(["run", config, "--out", str(out_dir), "--jobs", "2", "--runner", "thread"]) == EXIT_OK
    assert (out_dir / "scenario.json").is_file()
    assert (out_dir / "summary.md").is_file()
    assert "persistent eigenvalue(s): 0" in capsys.readouterr().out


def test_run_with_failed_task(tmp_path):
    config = _write(
        tmp_path / "scenario.json",
        {"symbol": {"preset": "scattering"}, "K_list": [16], "tasks": ["essential"], "output_dir": str(tmp_path / "o")},
    )
    assert main(["run", config]) == EXIT_FAILED


def test_verify_torus(capsys):
    assert main(["verify", "torus"]) == EXIT_OK
    assert "torus      PASS" in capsys.readouterr().out
