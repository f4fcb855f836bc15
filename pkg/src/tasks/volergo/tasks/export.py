"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import csv
import json
import os
from typing import Optional

from volergo.core import Log, RunConfig
from volergo.metric import TrajectoryRecord, write_metric_trace
from volergo.spatial import BasisSet, CoefficientVector, SearchSpace, build_basis, reconstruct, write_grid_csv
from volergo.volumetric import write_footprint_csv

from .benchmark import BenchmarkReport
from .trial import TrialRecord

_logger = Log.register_logger(__name__)

# cells per dimension of the exported coverage reconstruction
COVERAGE_CELLS = 64


def trial_directory(root: str, record: TrialRecord) -> str:
    """
    Output directory of a trial: ``<root>/<suite>/seed<N>/<method>``, with the platform
    inserted before the method for q1.

    Parameters
    ----------
    root: str
        Output root
    record: TrialRecord
        The trial

    Returns
    -------
    str
        Directory path
    """
    parts = [root, record.suite, "seed{}".format(record.seed)]
    if record.suite == "q1":
        parts.append(record.platform)
    parts.append(record.method)
    return os.path.join(*parts)


def _write_json(path: str, document: dict) -> None:
    with open(path, "w", encoding="UTF-8") as file:
        json.dump(document, file, indent=2, sort_keys=True)
        file.write("\n")


def write_trial(directory: str, config: RunConfig, record: TrialRecord) -> str:
    """
    Write every output file of one trial.

    ``record.json``, ``trajectory.csv`` and ``coverage_grid.csv`` are deterministic;
    wall-clock values only appear in ``timing.json``, ``metric_trace.csv`` and ``diagnostics.csv``.

    Parameters
    ----------
    directory: str
        Destination, created if missing
    config: RunConfig
        Resolved configuration, echoed next to the outputs
    record: TrialRecord
        The trial

    Returns
    -------
    str
        The directory
    """
    os.makedirs(directory, exist_ok=True)
    config.echo(directory)
    _write_json(os.path.join(directory, "record.json"), record.to_dict())
    TrajectoryRecord(record.states, record.controls, record.dt).to_csv(
        os.path.join(directory, "trajectory.csv"), record.state_names, record.control_names
    )
    write_metric_trace(os.path.join(directory, "metric_trace.csv"), record.metric_trace, record.wall_ms)

    with open(os.path.join(directory, "diagnostics.csv"), "w", newline="", encoding="UTF-8") as file:
        writer = csv.writer(file)
        writer.writerow(["step", "executed_metric", "plan_cost", "ilqr_iters", "degraded", "wall_ms"])
        for item in record.diagnostics:
            writer.writerow(
                [
                    item.step,
                    repr(float(item.executed_metric)),
                    repr(float(item.plan_cost)),
                    item.ilqr_iters,
                    int(item.degraded),
                    "{:.3f}".format(item.wall_ms),
                ]
            )

    with open(os.path.join(directory, "footprint_area.csv"), "w", newline="", encoding="UTF-8") as file:
        writer = csv.writer(file)
        writer.writerow(["step", "area"])
        for step, area in enumerate(record.footprint_area, start=1):
            writer.writerow([step, repr(float(area))])

    if record.steps:
        basis = build_basis_from(config)
        _, coverage = reconstruct(basis, CoefficientVector(record.coefficients), COVERAGE_CELLS)
        write_grid_csv(os.path.join(directory, "coverage_grid.csv"), coverage)
    if record.footprints is not None and record.footprints.size:
        write_footprint_csv(os.path.join(directory, "footprints.csv"), record.footprints)

    wall = record.wall_ms
    _write_json(
        os.path.join(directory, "timing.json"),
        {
            "steps": len(wall),
            "total_ms": float(sum(wall)),
            "mean_step_ms": float(sum(wall) / len(wall)) if wall else None,
        },
    )
    _logger.info(f"Wrote trial outputs to {directory}")
    return directory


def build_basis_from(config: RunConfig) -> BasisSet:
    """
    Basis described by a configuration.

    Parameters
    ----------
    config: RunConfig
        Run configuration

    Returns
    -------
    BasisSet
        The basis
    """
    return build_basis(SearchSpace(config.get("space.lengths")), config.get("basis.modes_per_dim"))


def write_report(directory: str, config: RunConfig, report: BenchmarkReport, trials: bool = True) -> str:
    """
    Write a suite's report and, optionally, every trial's files.

    Parameters
    ----------
    directory: str
        Suite directory, created if missing
    config: RunConfig
        Resolved configuration
    report: BenchmarkReport
        The report
    trials: bool
        Also write per-trial directories under ``directory``'s parent root

    Returns
    -------
    str
        The directory
    """
    os.makedirs(directory, exist_ok=True)
    config.echo(directory)
    _write_json(os.path.join(directory, "report.json"), report.to_dict())
    _write_json(os.path.join(directory, "timing.json"), report.timing())

    columns = [
        "method",
        "platform",
        "n_trials",
        "successes",
        "success_rate",
        "success_under_budget",
        "median_steps",
        "lower_quartile",
        "upper_quartile",
    ]
    with open(os.path.join(directory, "summary.csv"), "w", newline="", encoding="UTF-8") as file:
        writer = csv.writer(file)
        writer.writerow(columns)
        for item in report.summaries:
            row = item.to_dict()
            writer.writerow([row[column] for column in columns])

    if trials:
        root = os.path.dirname(os.path.normpath(directory))
        for record in report.records:
            write_trial(trial_directory(root, record), config, record)
    _logger.info(f"Wrote {report.suite} report to {directory}")
    return directory


def format_summary_table(report: BenchmarkReport, width: Optional[int] = None) -> str:
    """
    Plain-text table of a report's aggregates.

    Parameters
    ----------
    report: BenchmarkReport
        The report
    width: Optional[int]
        Column width; fitted to the content when omitted

    Returns
    -------
    str
        The table, one line per method and platform, followed by the step ratio
    """
    header = ["method", "platform", "success", "under budget", "median steps", "IQR"]
    rows = [
        [
            item.method,
            item.platform,
            "{}/{}".format(item.successes, item.n_trials),
            "{}/{}".format(item.success_under_budget, item.n_trials),
            "{:g}".format(item.median_steps),
            "{:g}-{:g}".format(item.lower_quartile, item.upper_quartile),
        ]
        for item in report.summaries
    ]
    width = width or max(len(cell) for row in [header] + rows for cell in row) + 2
    lines = ["".join(cell.ljust(width) for cell in row).rstrip() for row in [header] + rows]
    if report.step_ratio is not None:
        lines.append("median step ratio vec/baseline: {:.3f}".format(report.step_ratio))
    return "\n".join(lines)
