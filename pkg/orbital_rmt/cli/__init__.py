"""
Command-line surface: configs, result files and the `orbital-rmt` command.
"""

from .config import ExperimentConfig, load_config, parse_config
from .experiments import RUNNERS, run_experiment
from .main import build_parser, main, run_command
from .results import ResultRecord, output_paths, to_jsonable, write_results
from .selftest import CHECKS, run_selftest

__all__ = [
    "ExperimentConfig",
    "load_config",
    "parse_config",
    "RUNNERS",
    "run_experiment",
    "build_parser",
    "main",
    "run_command",
    "ResultRecord",
    "output_paths",
    "to_jsonable",
    "write_results",
    "CHECKS",
    "run_selftest",
]
