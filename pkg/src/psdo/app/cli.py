from __future__ import annotations

import argparse
import asyncio
import logging
import pathlib
import sys
from collections.abc import Sequence

from psdo import __version__
from psdo.app.models import ScenarioResult
from psdo.app.presets import PRESETS
from psdo.app.service import ScenarioService, validate
from psdo.app.verify import SUITES, run_suite
from psdo.errors import ScenarioValidationError
from psdo.workflow.runner import available_runners

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


def _read_config(path: str) -> str:
    src = pathlib.Path(path)
    if not src.is_file():
        msg = f"no such config file: {src}"
        raise FileNotFoundError(msg)
    return src.read_text(encoding="utf-8")


def _report_issues(error: ScenarioValidationError) -> None:
    for pointer, message in error.issues:
        print(f"{pointer or '/'}: {message}", file=sys.stderr)


async def _run(args: argparse.Namespace) -> ScenarioResult:
    service = ScenarioService(
        _read_config(args.config), output_dir=args.out, jobs=args.jobs, workflow_runner=args.runner
    )
    await service.fs.fetch(args.config)
    return await service.run_scenario()


def cmd_run(args: argparse.Namespace) -> int:
    try:
        result = asyncio.run(_run(args))
    except ScenarioValidationError as e:
        _report_issues(e)
        return EXIT_INVALID
    for outcome in result.outcomes:
        print(f"{outcome.task:<11} {outcome.status}  {outcome.headline}")
    print(f"summary: {result.summary_path}")
    return result.exit_code


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        cfg = validate(_read_config(args.config))
    except ScenarioValidationError as e:
        _report_issues(e)
        return EXIT_INVALID
    print(f"{args.config}: valid scenario '{cfg.name}' with tasks {', '.join(cfg.tasks.requested()) or 'none'}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    reports = run_suite(args.suite)
    for report in reports:
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            print(f"{report.suite:<10} {status}  {check.name}: {check.value:.6g} ({check.bound})")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_presets(args: argparse.Namespace) -> int:
    for preset in PRESETS.values():
        print(f"{preset.name:<14} {preset.geometry:<7} {preset.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psdo", description="Finite-section experiments for order-0 symbols.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario config")
    run.add_argument("config", help="scenario JSON file")
    run.add_argument("--out", default=None, help="output directory (overrides the config)")
    run.add_argument("--jobs", type=int, default=None, help="threads for independent K values")
    run.add_argument("--runner", choices=available_runners(), default=None, help="pipeline runner (default: local)")
    run.set_defaults(func=cmd_run)

    check = sub.add_parser("validate", help="validate a scenario config without running it")
    check.add_argument("config")
    check.set_defaults(func=cmd_validate)

    verify = sub.add_parser("verify", help="run a named acceptance suite")
    verify.add_argument("suite", choices=[*SUITES, "all"])
    verify.set_defaults(func=cmd_verify)

    presets = sub.add_parser("presets", help="list named symbols")
    presets.set_defaults(func=cmd_presets)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return int(args.func(args))
    except (FileNotFoundError, KeyError) as e:
        logger.error("%s", e)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
