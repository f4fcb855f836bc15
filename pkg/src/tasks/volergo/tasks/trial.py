"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from volergo.control import (
    ROLLOUT_FAILURES,
    ControllerMemory,
    RecedingHorizonController,
    RolloutDiverged,
    StandardErgodicObjective,
    StepDiagnostics,
    VolumetricObjective,
)
from volergo.core import Log, RunConfig, constants
from volergo.volumetric import VolumetricModel, footprint_area

from .exceptions import ConfigurationMismatch
from .scenario import build_scenario, resolve_platform

TRIAL_FAILURES = ROLLOUT_FAILURES + (RolloutDiverged,)

_logger = Log.register_logger(__name__)


@dataclass(eq=False)
class TrialRecord:
    """
    Closed-loop execution of one method on one seed.

    Two records are equal when everything except wall-clock timing and footprint dumps matches.

    Parameters
    ----------
    suite: str
        Benchmark suite
    method: str
        ``vec`` or ``baseline``
    platform: str
        Platform name
    seed: int
        Trial seed
    budget: int
        Step budget of the suite
    max_steps: int
        Truncation limit
    dt: float
        Control period
    completion_step: Optional[int]
        1-based step at which the task completed, ``None`` if it did not
    failure: Optional[str]
        Controller or dynamics error that ended the trial
    metric_trace: List[float]
        Executed-trajectory ergodic metric after every step
    progress_trace: List[float]
        Completed share of the task after every step
    footprint_area: List[float]
        Convex-hull area of the real footprint at every executed state
    states: np.ndarray
        ``(T + 1, n)`` executed states
    controls: np.ndarray
        ``(T, m)`` applied controls
    coefficients: np.ndarray
        ``(K,)`` coefficients of the executed states
    diagnostics: List[StepDiagnostics]
        Per-step controller diagnostics
    state_names: Tuple[str, ...]
        State component names
    control_names: Tuple[str, ...]
        Control component names
    footprints: Optional[np.ndarray]
        ``(T, N, 2)`` footprint samples, when requested
    """

    suite: str
    method: str
    platform: str
    seed: int
    budget: int
    max_steps: int
    dt: float
    completion_step: Optional[int]
    failure: Optional[str]
    metric_trace: List[float]
    progress_trace: List[float]
    footprint_area: List[float]
    states: np.ndarray
    controls: np.ndarray
    coefficients: np.ndarray
    diagnostics: List[StepDiagnostics]
    state_names: Tuple[str, ...]
    control_names: Tuple[str, ...]
    footprints: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def steps(self) -> int:
        # noqa: D102
        return self.controls.shape[0]

    @property
    def success(self) -> bool:
        """Task completed; for q1, the full trace was executed without failure."""
        if self.suite == "q1":
            return self.failure is None
        return self.completion_step is not None

    @property
    def success_under_budget(self) -> bool:
        # noqa: D102
        return self.completion_step is not None and self.completion_step <= self.budget

    @property
    def steps_or_limit(self) -> int:
        """Completion step, or the truncation limit for trials that did not complete."""
        return self.completion_step if self.completion_step is not None else self.max_steps

    @property
    def wall_ms(self) -> List[float]:
        # noqa: D102
        return [item.wall_ms for item in self.diagnostics]

    def to_dict(self) -> dict:
        """
        Deterministic content of the record, without timing.

        Returns
        -------
        dict
            JSON-serializable record
        """
        return {
            "suite": self.suite,
            "method": self.method,
            "platform": self.platform,
            "seed": self.seed,
            "budget": self.budget,
            "max_steps": self.max_steps,
            "dt": self.dt,
            "steps": self.steps,
            "success": self.success,
            "success_under_budget": self.success_under_budget,
            "completion_step": self.completion_step,
            "failure": self.failure,
            "metric_trace": [float(value) for value in self.metric_trace],
            "progress_trace": [float(value) for value in self.progress_trace],
            "footprint_area": [float(value) for value in self.footprint_area],
            "coefficients": self.coefficients.tolist(),
            "ilqr_iters": [item.ilqr_iters for item in self.diagnostics],
            "plan_cost": [float(item.plan_cost) for item in self.diagnostics],
            "degraded_steps": sum(item.degraded for item in self.diagnostics),
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrialRecord):
            return NotImplemented
        return (
            self.to_dict() == other.to_dict()
            and np.array_equal(self.states, other.states)
            and np.array_equal(self.controls, other.controls)
        )


def run_trial(
    config: RunConfig,
    suite: str,
    method: str,
    seed: int,
    platform: Optional[str] = None,
    footprints: bool = False,
    planning_model: Optional[VolumetricModel] = None,
    log: bool = True,
) -> TrialRecord:
    """
    Run one closed-loop trial until the task completes or the truncation limit is hit.

    Completion is checked on the real footprint of each executed state, for both methods, with
    sample points left where they fall even when the planning model clamps them into the space.
    Controller and dynamics failures end the trial and are recorded, not raised.

    Parameters
    ----------
    config: RunConfig
        Run configuration
    suite: str
        Benchmark suite
    method: str
        ``vec`` plans with the footprint model, ``baseline`` with the robot position only
    seed: int
        Trial seed
    platform: Optional[str]
        Platform for q1
    footprints: bool
        Keep the footprint samples of every executed state
    planning_model: Optional[VolumetricModel]
        Footprint ``vec`` plans with instead of the scenario's own; completion still uses the latter
    log: bool
        Whether to keep the controller's logger enabled

    Returns
    -------
    TrialRecord
        The record

    Raises
    ------
    ConfigurationMismatch
        If the method is unknown or the platform does not fit the suite
    """
    if method not in constants["Methods"]:
        raise ConfigurationMismatch(suite, "unknown method '{}'".format(method))
    platform = resolve_platform(suite, platform, config)
    scenario = build_scenario(config, suite, seed, platform)
    dyn, model, basis = scenario.dyn, scenario.model, scenario.basis
    if method == "vec":
        objective = VolumetricObjective(basis, model if planning_model is None else planning_model, dyn)
    else:
        objective = StandardErgodicObjective(basis, dyn)
    controller = RecedingHorizonController(scenario.controller, objective, scenario.phi, log=log)
    memory = ControllerMemory.initial(len(basis))
    progress = scenario.progress()

    state = scenario.initial_state
    states, controls = [state], []
    diagnostics: List[StepDiagnostics] = []
    metric_trace, progress_trace, areas, dumps = [], [], [], []
    completion_step = failure = None
    _logger.info(f"Trial {suite}/{method} seed {seed} on {platform}: up to {scenario.max_steps} steps")
    for step in range(1, scenario.max_steps + 1):
        try:
            footprint = model.projected_points(state, dyn)
            outcome = controller.execute_step(memory, state)
        except TRIAL_FAILURES as error:
            failure = "{}: {}".format(type(error).__name__, error)
            _logger.warning(f"Trial {suite}/{method} seed {seed} failed at step {step}: {failure}")
            break
        memory = outcome.memory
        diagnostics.append(outcome.diagnostics)
        metric_trace.append(outcome.diagnostics.executed_metric)
        areas.append(footprint_area(footprint))
        if footprints:
            dumps.append(footprint)
        done = progress.update(footprint)
        progress_trace.append(progress.fraction)
        state = outcome.next_state
        states.append(state)
        controls.append(outcome.control)
        if done:
            completion_step = step
            break

    _logger.info(
        f"Trial {suite}/{method} seed {seed} finished after {len(controls)} steps, completion step {completion_step}"
    )
    return TrialRecord(
        suite=suite,
        method=method,
        platform=platform,
        seed=seed,
        budget=scenario.budget,
        max_steps=scenario.max_steps,
        dt=scenario.controller.dt,
        completion_step=completion_step,
        failure=failure,
        metric_trace=metric_trace,
        progress_trace=progress_trace,
        footprint_area=areas,
        states=np.array(states),
        controls=np.array(controls).reshape(len(controls), dyn.n_controls),
        coefficients=np.array(memory.running_basis_mean),
        diagnostics=diagnostics,
        state_names=dyn.state_names,
        control_names=dyn.control_names,
        footprints=np.array(dumps) if footprints else None,
    )


def q1_metric_trace(config: RunConfig, platform: str, seed: int, log: bool = True) -> List[float]:
    """
    Executed-trajectory volumetric metric over a randomized mixture target.

    Parameters
    ----------
    config: RunConfig
        Run configuration
    platform: str
        Platform name
    seed: int
        Trial seed
    log: bool
        Whether to keep the controller's logger enabled

    Returns
    -------
    List[float]
        Metric after every executed step
    """
    return run_trial(config, "q1", "vec", seed, platform=platform, log=log).metric_trace
