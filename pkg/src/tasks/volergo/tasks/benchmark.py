"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from volergo.core import Log, RunConfig, constants

from .exceptions import UnknownSuite
from .trial import TrialRecord, run_trial

_logger = Log.register_logger(__name__)

# step after which q1 metric decrease is measured
Q1_REFERENCE_STEP = 5


@dataclass
class MethodSummary:
    """
    Aggregates of one method (and platform) over a suite's trials.

    Failed trials count at the truncation limit in the step statistics.

    Parameters
    ----------
    method: str
        ``vec`` or ``baseline``
    platform: str
        Platform name
    n_trials: int
        Trials aggregated
    successes: int
        Trials that completed (q1: ran without failure)
    success_under_budget: int
        Trials that completed within the budget
    median_steps: float
        Median completion step
    lower_quartile: float
        25th percentile of the completion step
    upper_quartile: float
        75th percentile of the completion step
    extras: Dict[str, float]
        Suite-specific aggregates
    """

    method: str
    platform: str
    n_trials: int
    successes: int
    success_under_budget: int
    median_steps: float
    lower_quartile: float
    upper_quartile: float
    extras: Dict[str, float] = field(default_factory=dict)

    @property
    def success_rate(self) -> float:
        # noqa: D102
        return self.successes / self.n_trials

    def to_dict(self) -> dict:
        """
        Serializable form.

        Returns
        -------
        dict
            All fields plus the success rate
        """
        return {
            "method": self.method,
            "platform": self.platform,
            "n_trials": self.n_trials,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "success_under_budget": self.success_under_budget,
            "median_steps": self.median_steps,
            "lower_quartile": self.lower_quartile,
            "upper_quartile": self.upper_quartile,
            **self.extras,
        }


@dataclass(eq=False)
class BenchmarkReport:
    """
    Every trial of a suite with its aggregates.

    Parameters
    ----------
    suite: str
        Benchmark suite
    seeds: List[int]
        Trial seeds in order
    records: List[TrialRecord]
        Trial records ordered by method, platform and seed
    summaries: List[MethodSummary]
        One summary per method and platform
    step_ratio: Optional[float]
        Median VEC completion step over median baseline completion step
    """

    suite: str
    seeds: List[int]
    records: List[TrialRecord]
    summaries: List[MethodSummary]
    step_ratio: Optional[float] = None

    @property
    def all_failed(self) -> bool:
        # noqa: D102
        return all(not record.success for record in self.records)

    def summary(self, method: str, platform: Optional[str] = None) -> MethodSummary:
        """
        Look up one summary.

        Parameters
        ----------
        method: str
            Method name
        platform: Optional[str]
            Platform name; the first match when omitted

        Returns
        -------
        MethodSummary
            The summary
        """
        for item in self.summaries:
            if item.method == method and platform in (None, item.platform):
                return item
        raise KeyError("No summary for {} on {}".format(method, platform))

    def to_dict(self) -> dict:
        """
        Deterministic report: per-trial records and aggregates, no timing.

        Returns
        -------
        dict
            JSON-serializable report
        """
        return {
            "suite": self.suite,
            "seeds": list(self.seeds),
            "summaries": [item.to_dict() for item in self.summaries],
            "step_ratio": self.step_ratio,
            "trials": [record.to_dict() for record in self.records],
        }

    def timing(self) -> dict:
        """
        Wall-clock plan times per method and platform, and the VEC overhead.

        Returns
        -------
        dict
            Mean and median per-step milliseconds, control frequency, overhead ratio
        """
        groups: Dict[str, dict] = {}
        for (method, platform), records in _grouped(self.records).items():
            wall = np.array([value for record in records for value in record.wall_ms], dtype=float)
            mean = float(np.mean(wall)) if wall.size else None
            groups[f"{method}/{platform}"] = {
                "mean_step_ms": mean,
                "median_step_ms": float(np.median(wall)) if wall.size else None,
                "control_hz": 1e3 / mean if mean else None,
            }
        overhead = {}
        for key, value in groups.items():
            method, platform = key.split("/")
            baseline = groups.get(f"baseline/{platform}")
            if method == "vec" and baseline and baseline["mean_step_ms"] and value["mean_step_ms"]:
                overhead[platform] = value["mean_step_ms"] / baseline["mean_step_ms"]
        return {"suite": self.suite, "methods": groups, "vec_overhead": overhead}


def _grouped(records: List[TrialRecord]) -> Dict[Tuple[str, str], List[TrialRecord]]:
    groups: Dict[Tuple[str, str], List[TrialRecord]] = {}
    for record in records:
        groups.setdefault((record.method, record.platform), []).append(record)
    return groups


def summarize(records: List[TrialRecord]) -> MethodSummary:
    """
    Aggregate the trials of one method and platform.

    Parameters
    ----------
    records: List[TrialRecord]
        Non-empty list of trials of the same method and platform

    Returns
    -------
    MethodSummary
        The aggregates
    """
    steps = np.array([record.steps_or_limit for record in records], dtype=float)
    lower, median, upper = np.percentile(steps, [25, 50, 75])
    extras: Dict[str, float] = {}
    first = records[0]
    if first.suite == "q1":
        finals = [record.metric_trace[-1] for record in records if record.metric_trace]
        reductions = [
            record.metric_trace[-1] / record.metric_trace[Q1_REFERENCE_STEP - 1]
            for record in records
            if len(record.metric_trace) >= Q1_REFERENCE_STEP and record.metric_trace[Q1_REFERENCE_STEP - 1] > 0
        ]
        extras["median_final_metric"] = float(np.median(finals)) if finals else None
        extras["median_metric_reduction"] = float(np.median(reductions)) if reductions else None
        extras["seeds_reduced_below_0_3"] = int(sum(ratio < 0.3 for ratio in reductions))
    if first.platform == "quadcopter":
        ratios = [
            record.footprint_area[len(record.footprint_area) // 2] / record.footprint_area[0]
            for record in records
            if record.footprint_area and record.footprint_area[0] > 0
        ]
        extras["mean_mid_trial_area_ratio"] = float(np.mean(ratios)) if ratios else None
    return MethodSummary(
        method=first.method,
        platform=first.platform,
        n_trials=len(records),
        successes=sum(record.success for record in records),
        success_under_budget=sum(record.success_under_budget for record in records),
        median_steps=float(median),
        lower_quartile=float(lower),
        upper_quartile=float(upper),
        extras=extras,
    )


def _trial_jobs(suite: str, seeds: List[int]) -> List[Tuple[str, Optional[str], int]]:
    if suite == "q1":
        return [("vec", platform, seed) for platform in constants["Platforms"] for seed in seeds]
    return [(method, None, seed) for method in constants["Methods"] for seed in seeds]


def _run_job(arguments: Tuple[RunConfig, str, str, Optional[str], int, bool]) -> TrialRecord:
    config, suite, method, platform, seed, footprints = arguments
    return run_trial(config, suite, method, seed, platform=platform, footprints=footprints, log=False)


def run_benchmark(
    config: RunConfig,
    suite: str,
    n_trials: Optional[int] = None,
    jobs: Optional[int] = None,
) -> BenchmarkReport:
    """
    Run every method of a suite on consecutive seeds and aggregate the results.

    q1 runs the volumetric controller on every platform; the other suites run both methods.
    Trials are independent; with ``jobs > 1`` they run in worker processes and are reduced in
    the same order as a sequential run.

    Parameters
    ----------
    config: RunConfig
        Run configuration
    suite: str
        Benchmark suite
    n_trials: Optional[int]
        Seeds per method; ``task.n_trials`` when omitted
    jobs: Optional[int]
        Worker processes; ``jobs`` from the configuration when omitted

    Returns
    -------
    BenchmarkReport
        The report

    Raises
    ------
    UnknownSuite
        If the suite does not exist
    """
    if suite not in constants["Suites"]:
        raise UnknownSuite(suite)
    n_trials = config.get("task.n_trials") if n_trials is None else n_trials
    if n_trials < 1:
        raise ValueError("A benchmark needs at least one trial, got {}".format(n_trials))
    jobs = config.jobs if jobs is None else jobs
    seed_base = config.get("task.seed_base")
    seeds = list(range(seed_base, seed_base + n_trials))
    footprints = bool(config.get("output.footprints"))
    arguments = [
        (config, suite, method, platform, seed, footprints) for method, platform, seed in _trial_jobs(suite, seeds)
    ]
    _logger.info(f"Benchmark {suite}: {len(arguments)} trials on {jobs} worker(s)")

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            records = list(executor.map(_run_job, arguments))
    else:
        records = [_run_job(item) for item in arguments]

    summaries = [summarize(group) for group in _grouped(records).values()]
    step_ratio = None
    if suite != "q1":
        vec = next(item for item in summaries if item.method == "vec")
        baseline = next(item for item in summaries if item.method == "baseline")
        step_ratio = vec.median_steps / baseline.median_steps
    return BenchmarkReport(suite=suite, seeds=seeds, records=records, summaries=summaries, step_ratio=step_ratio)
