"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import argparse
import logging
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import yaml
from volergo.control import InvalidControllerConfig
from volergo.core import (
    ConfigFileNotFound,
    ConfigFileUnreadable,
    ConfigValidationFailed,
    Log,
    RunConfig,
    UnknownOverride,
    config_reference,
    constants,
)
from volergo.spatial import GridFileUnreadable, reconstruct, write_basis_table, write_grid_csv
from volergo.tasks import (
    ConfigurationMismatch,
    UnknownShape,
    UnknownSuite,
    build_scenario,
    format_summary_table,
    run_benchmark,
    run_trial,
    trial_directory,
    write_report,
    write_trial,
)
from volergo.volumetric import InvalidModelParameter, Point, UnsupportedPose, write_footprint_csv

from .exceptions import InvalidStateArgument, UsageError

# failures caused by the configuration or the arguments rather than by a trial
CONFIG_ERRORS = (
    UsageError,
    InvalidStateArgument,
    ConfigFileNotFound,
    ConfigFileUnreadable,
    ConfigValidationFailed,
    UnknownOverride,
    InvalidControllerConfig,
    ConfigurationMismatch,
    UnknownShape,
    UnknownSuite,
    GridFileUnreadable,
    InvalidModelParameter,
    UnsupportedPose,
)

_logger = Log.register_logger(__name__)


class _Parser(argparse.ArgumentParser):
    # no prefix matching: dotted overrides share the "--" prefix
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(message)


def _load_config(args: argparse.Namespace, overrides: Sequence[str]) -> RunConfig:
    flags = {
        "task.suite": getattr(args, "suite", None),
        "task.seed": getattr(args, "seed", None),
        "task.method": getattr(args, "method", None),
        "task.platform": getattr(args, "platform", None),
        "task.n_trials": getattr(args, "n_trials", None),
        "jobs": getattr(args, "jobs", None),
    }
    return RunConfig.load(args.config, overrides=overrides, flags=flags)


def cmd_run(args: argparse.Namespace, overrides: Sequence[str]) -> int:
    """
    Run one trial and write its outputs under ``<output>/<suite>/seed<N>/<method>``.

    Parameters
    ----------
    args: argparse.Namespace
        Parsed arguments
    overrides: Sequence[str]
        Dotted config overrides

    Returns
    -------
    int
        0 when the trial succeeded, 2 otherwise
    """
    config = _load_config(args, overrides)
    task = config.section("task")
    platform = task["platform"] if task["suite"] == "q1" else None
    record = run_trial(
        config,
        task["suite"],
        task["method"],
        task["seed"],
        platform=platform,
        footprints=bool(config.get("output.footprints")),
    )
    directory = write_trial(trial_directory(config.output_root, record), config, record)
    if record.completion_step is not None:
        outcome = "completed at step {}".format(record.completion_step)
    elif record.failure:
        outcome = "failed: {}".format(record.failure)
    else:
        outcome = "ran {} steps".format(record.steps)
    print("{} {} seed {}: {} -> {}".format(record.suite, record.method, record.seed, outcome, directory))
    return constants["ExitSuccess"] if record.success else constants["ExitTrialFailure"]


def cmd_bench(args: argparse.Namespace, overrides: Sequence[str]) -> int:
    """
    Run a whole suite, write its report and print the aggregate table.

    Parameters
    ----------
    args: argparse.Namespace
        Parsed arguments
    overrides: Sequence[str]
        Dotted config overrides

    Returns
    -------
    int
        0 unless every trial failed
    """
    config = _load_config(args, overrides)
    suite = config.get("task.suite")
    report = run_benchmark(config, suite)
    directory = write_report(os.path.join(config.output_root, suite), config, report)
    print(format_summary_table(report))
    print("Report written to {}".format(directory))
    return constants["ExitTrialFailure"] if report.all_failed else constants["ExitSuccess"]


def cmd_coeffs(args: argparse.Namespace, overrides: Sequence[str]) -> int:
    """
    Dump the basis table with the target coefficients and a reconstruction of the target.

    Parameters
    ----------
    args: argparse.Namespace
        Parsed arguments
    overrides: Sequence[str]
        Dotted config overrides

    Returns
    -------
    int
        0
    """
    config = _load_config(args, overrides)
    task = config.section("task")
    scenario = build_scenario(config, task["suite"], task["seed"], task["platform"] if task["suite"] == "q1" else None)
    directory = args.output or os.path.join(config.output_root, "coeffs")
    os.makedirs(directory, exist_ok=True)
    config.echo(directory)
    write_basis_table(os.path.join(directory, "coefficients.csv"), scenario.basis, scenario.phi)
    _, values = reconstruct(scenario.basis, scenario.phi, args.cells)
    write_grid_csv(os.path.join(directory, "reconstruction.csv"), values)
    print("{} modes written to {}".format(len(scenario.basis), directory))
    return constants["ExitSuccess"]


def _parse_state(value: str, expected: int) -> np.ndarray:
    try:
        parsed = yaml.safe_load(value if value.strip().startswith("[") else "[{}]".format(value))
        state = np.asarray(parsed, dtype=float)
    except (yaml.YAMLError, TypeError, ValueError):
        raise InvalidStateArgument(value, expected)
    if state.shape != (expected,) or not np.all(np.isfinite(state)):
        raise InvalidStateArgument(value, expected)
    return state


def cmd_footprint(args: argparse.Namespace, overrides: Sequence[str]) -> int:
    """
    Dump the footprint samples of one state.

    Parameters
    ----------
    args: argparse.Namespace
        Parsed arguments
    overrides: Sequence[str]
        Dotted config overrides

    Returns
    -------
    int
        0
    """
    config = _load_config(args, overrides)
    task = config.section("task")
    scenario = build_scenario(config, task["suite"], task["seed"], task["platform"] if task["suite"] == "q1" else None)
    state = _parse_state(args.state, scenario.dyn.n_states)
    model = Point() if args.model == "point" else scenario.model
    points = model.sample_points(state, scenario.dyn)
    path = args.output or os.path.join(config.output_root, "footprint.csv")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    write_footprint_csv(path, points)
    print("{} samples written to {}".format(points.shape[0], path))
    return constants["ExitSuccess"]


def cmd_config_reference(args: argparse.Namespace, overrides: Sequence[str]) -> int:
    """
    Print or write the Markdown reference of every configuration key.

    Parameters
    ----------
    args: argparse.Namespace
        Parsed arguments
    overrides: Sequence[str]
        Must be empty

    Returns
    -------
    int
        0
    """
    if overrides:
        raise UsageError("config-reference takes no overrides")
    reference = config_reference()
    if args.output:
        with open(args.output, "w", encoding="UTF-8") as file:
            file.write(reference)
        print("Configuration reference written to {}".format(args.output))
    else:
        print(reference)
    return constants["ExitSuccess"]


COMMANDS: Dict[str, Callable[[argparse.Namespace, Sequence[str]], int]] = {
    "run": cmd_run,
    "bench": cmd_bench,
    "coeffs": cmd_coeffs,
    "footprint": cmd_footprint,
    "config-reference": cmd_config_reference,
}


def _configure_logging(args: argparse.Namespace):
    Log.set_all_logger_level(getattr(logging, args.log_level))
    Log.set_verbosity(args.verbose)
    if args.quiet:
        Log.close_all()
    else:
        Log.open_all()
    if args.no_log_file:
        Log.close_file_output()
    else:
        Log.open_file_output()


def build_parser() -> argparse.ArgumentParser:
    """
    Command-line parser; unknown ``--section.key=value`` options are treated as overrides.

    Returns
    -------
    argparse.ArgumentParser
        The parser
    """
    common = _Parser(add_help=False)
    common.add_argument("--config", default=None, help="JSONC or YAML run configuration")
    common.add_argument("--verbose", action="store_true", help="Echo progress messages")
    common.add_argument("--quiet", action="store_true", help="Silence every logger")
    common.add_argument("--no-log-file", dest="no_log_file", action="store_true", help="Do not write volergo.log")
    common.add_argument(
        "--log-level", dest="log_level", choices=("DEBUG", "INFO", "WARNING", "ERROR"), default="INFO"
    )

    selection = _Parser(add_help=False)
    selection.add_argument("--suite", choices=constants["Suites"], default=None)
    selection.add_argument("--seed", type=int, default=None)
    selection.add_argument("--platform", choices=constants["Platforms"], default=None)

    parser = _Parser(prog="volergo", description="Volumetric ergodic control benchmarks")
    commands = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    commands.required = True

    run = commands.add_parser("run", parents=[common, selection], help="Run a single trial")
    run.add_argument("--method", choices=constants["Methods"], default=None)

    bench = commands.add_parser("bench", parents=[common], help="Run a benchmark suite")
    bench.add_argument("--suite", choices=constants["Suites"], default=None)
    bench.add_argument("--n-trials", dest="n_trials", type=int, default=None)
    bench.add_argument("--jobs", type=int, default=None)

    coeffs = commands.add_parser("coeffs", parents=[common, selection], help="Dump target coefficients")
    coeffs.add_argument("--cells", type=int, default=64, help="Reconstruction cells per dimension")
    coeffs.add_argument("--output", default=None, help="Output directory")

    footprint = commands.add_parser("footprint", parents=[common, selection], help="Dump footprint samples")
    footprint.add_argument("--state", required=True, help="State as comma-separated numbers")
    footprint.add_argument("--model", choices=("scenario", "point"), default="scenario")
    footprint.add_argument("--output", default=None, help="Output CSV")

    reference = commands.add_parser("config-reference", parents=[common], help="Document the configuration keys")
    reference.add_argument("--output", default=None, help="Output Markdown file")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the ``volergo`` command.

    Parameters
    ----------
    argv: Optional[List[str]]
        Arguments without the program name; ``sys.argv[1:]`` when omitted

    Returns
    -------
    int
        0 on success, 1 for configuration or usage errors, 2 when trials failed
    """
    argv = sys.argv[1:] if argv is None else argv
    try:
        args, overrides = build_parser().parse_known_args(argv)
        _configure_logging(args)
        return COMMANDS[args.command](args, overrides)
    except CONFIG_ERRORS as exc:
        _logger.error(str(exc))
        print(str(exc), file=sys.stderr)
        return constants["ExitConfigError"]
