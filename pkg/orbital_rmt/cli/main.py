"""
Command-line entry point: `orbital-rmt run|validate|describe|selftest`.

Exit status is 0 on success, 2 for config problems and 1 for failures
during a run.
"""

import argparse
import json
import sys
import time
from typing import List, Optional

from rich.console import Console
from rich.table import Table

from .. import __version__
from ..constants import CSV_COLUMNS, EXPERIMENT_CITATIONS, EXPERIMENT_DEFAULTS, EXPERIMENT_MODELS, EXPERIMENTS
from ..exceptions import ConfigValidationError, OrbitalRMTError
from ..utils.logging import get_logger, setup_logging
from .config import load_config
from .experiments import run_experiment
from .results import ResultRecord, to_jsonable, write_results
from .selftest import run_selftest

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbital-rmt",
        description="Monte Carlo checks of eigenvalue and localisation bounds for random block operators.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run an experiment config and write its results")
    run.add_argument("config", help="Path to a JSON experiment config")
    run.add_argument("--workers", type=int, default=None, help="Worker processes (default: ORBITAL_RMT_WORKERS or all cores)")
    run.add_argument("--output", default=None, help="Output path stem; overrides the config's output")
    run.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    validate = sub.add_parser("validate", help="Validate a config and print it with defaults filled in")
    validate.add_argument("config", help="Path to a JSON experiment config")

    describe = sub.add_parser("describe", help="Show what an experiment tests and its parameters")
    describe.add_argument("experiment", nargs="?", choices=EXPERIMENTS, help="Experiment name; all when omitted")

    sub.add_parser("selftest", help="Run the fast oracle checks")
    return parser


def _summary_table(record: ResultRecord) -> Table:
    table = Table(title=f"{record.experiment} results")
    for column in record.columns:
        table.add_column(column, justify="right")
    for row in record.rows:
        cells = []
        for column in record.columns:
            value = to_jsonable(row.get(column))
            cells.append("" if value is None else (f"{value:.6g}" if isinstance(value, float) else str(value)))
        table.add_row(*cells)
    return table


def _print_errors(error: ConfigValidationError) -> None:
    for message in error.errors:
        logger.error(message)


def _cmd_run(args: argparse.Namespace, console: Console) -> int:
    setup_logging("DEBUG" if args.verbose else "INFO")
    try:
        config = load_config(args.config)
    except ConfigValidationError as e:
        _print_errors(e)
        return EXIT_CONFIG
    if args.output:
        config = config.with_output(args.output)

    started = time.perf_counter()
    try:
        record = run_experiment(config, args.workers)
        elapsed = time.perf_counter() - started
        record.timing = elapsed
        if config.output:
            write_results(record, config.output)
    except OrbitalRMTError as e:
        logger.error(f"{config.experiment} failed: {e}")
        return EXIT_FAILURE
    console.print(_summary_table(record))
    logger.success(f"{config.experiment} finished in {elapsed:.2f}s")
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace, console: Console) -> int:
    setup_logging("INFO")
    try:
        config = load_config(args.config)
    except ConfigValidationError as e:
        _print_errors(e)
        return EXIT_CONFIG
    console.print_json(json.dumps(to_jsonable(config.to_dict()), sort_keys=True))
    logger.success(f"{args.config} is a valid {config.experiment} config")
    return EXIT_OK


def _describe_one(name: str, console: Console) -> None:
    console.rule(name)
    console.print(EXPERIMENT_CITATIONS[name])
    models = EXPERIMENT_MODELS[name]
    console.print(f"model types: {', '.join(models) if models else 'none'}")
    table = Table("parameter", "default")
    for key, value in EXPERIMENT_DEFAULTS[name].items():
        table.add_row(key, json.dumps(value))
    console.print(table)
    console.print(f"csv columns: {', '.join(CSV_COLUMNS[name])}")


def _cmd_describe(args: argparse.Namespace, console: Console) -> int:
    for name in [args.experiment] if args.experiment else EXPERIMENTS:
        _describe_one(name, console)
    return EXIT_OK


def _cmd_selftest(args: argparse.Namespace, console: Console) -> int:
    setup_logging("WARNING")
    results = run_selftest()
    table = Table("check", "result", "detail", title="selftest")
    for name, passed, detail in results:
        table.add_row(name, "[green]pass[/green]" if passed else "[red]FAIL[/red]", detail)
    console.print(table)
    failed = [name for name, passed, _ in results if not passed]
    if failed:
        logger.error(f"{len(failed)} of {len(results)} checks failed")
        return EXIT_FAILURE
    logger.success(f"All {len(results)} checks passed")
    return EXIT_OK


COMMANDS = {
    "run": _cmd_run,
    "validate": _cmd_validate,
    "describe": _cmd_describe,
    "selftest": _cmd_selftest,
}


def run_command(argv: Optional[List[str]] = None, console: Optional[Console] = None) -> int:
    """
    Dispatch one command line.

    Args:
        argv: Arguments without the program name; sys.argv[1:] by default
        console: Where tables go; stdout by default

    Returns:
        Process exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    return COMMANDS[args.command](args, console or Console())


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
