"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from volergo.core import Log
from volergo.dynamics import DynamicsModel
from volergo.spatial import BasisSet
from volergo.volumetric import VolumetricModel

from .config import ControllerConfig
from .ilqr import ILQRSolver, PlanResult
from .memory import ControllerMemory
from .objective import (
    BoundaryBarrier,
    ErgodicHorizonCost,
    ErgodicObjective,
    StandardErgodicObjective,
    VolumetricObjective,
)


@dataclass
class StepDiagnostics:
    """
    Per-step record of the controller.

    Parameters
    ----------
    step: int
        1-based index of the executed step
    executed_metric: float
        Ergodic metric of the executed trajectory including this step's starting state
    plan_cost: float
        Horizon cost of the executed plan
    ilqr_iters: int
        Accepted iLQR iterations
    degraded: bool
        Whether the plan hit the regularization ceiling
    wall_ms: float
        Planning wall time, excluded from comparisons
    """

    step: int
    executed_metric: float
    plan_cost: float
    ilqr_iters: int
    degraded: bool
    wall_ms: float = field(default=0.0, compare=False)


@dataclass
class StepOutcome:
    """
    Result of one receding-horizon step.

    Parameters
    ----------
    control: np.ndarray
        ``(m,)`` applied, clamped control
    next_state: np.ndarray
        ``(n,)`` state after one control period
    memory: ControllerMemory
        Memory for the next step
    plan: PlanResult
        The plan the control was taken from
    diagnostics: StepDiagnostics
        Step record
    """

    control: np.ndarray
    next_state: np.ndarray
    memory: ControllerMemory
    plan: PlanResult
    diagnostics: StepDiagnostics


class RecedingHorizonController:
    """
    Plan over a finite horizon with iLQR, apply the first control, fold the state into memory, repeat.

    The same controller runs the volumetric method and the point baseline; only the
    objective differs.

    Parameters
    ----------
    config: ControllerConfig
        Controller settings
    objective: ErgodicObjective
        Per-state basis values
    phi: np.ndarray
        Target coefficients
    log: bool
        Whether to keep the logger enabled
    """

    def __init__(self, config: ControllerConfig, objective: ErgodicObjective, phi: np.ndarray, log: bool = True):
        self.config = config
        self.objective = objective
        self.dyn = objective.dyn
        self.phi = np.asarray(phi, dtype=float)
        if self.phi.shape != (len(objective.basis),):
            raise ValueError("Expected {} target coefficients, got {}".format(len(objective.basis), self.phi.size))
        self.control_weight = config.control_weight_matrix(self.dyn.n_controls)
        self.barrier = None
        if config.barrier_weight > 0:
            self.barrier = BoundaryBarrier(
                objective.basis.space,
                self.dyn,
                config.barrier_weight,
                config.barrier_margin,
                config.altitude_band,
            )
        self.solver = ILQRSolver(config, self.dyn, log=log)
        self.__logger = Log.register_logger(__name__)
        if not log:
            Log.close(self.__logger)

    def horizon_cost(self, memory: ControllerMemory) -> ErgodicHorizonCost:
        """
        Cost of the next horizon given the executed history.

        Parameters
        ----------
        memory: ControllerMemory
            Executed history

        Returns
        -------
        ErgodicHorizonCost
            The cost
        """
        return ErgodicHorizonCost(self.objective, memory, self.phi, self.control_weight, self.config.dt, self.barrier)

    def plan(self, memory: ControllerMemory, s_now: np.ndarray) -> PlanResult:
        """
        Optimize the next ``H`` controls from the current state.

        Parameters
        ----------
        memory: ControllerMemory
            Executed history
        s_now: np.ndarray
            ``(n,)`` current state

        Returns
        -------
        PlanResult
            The plan
        """
        s_now = np.asarray(s_now, dtype=float)
        return self.solver.solve(
            self.horizon_cost(memory), s_now, memory.warm_start(self.dyn, self.config.horizon_steps)
        )

    def execute_step(self, memory: ControllerMemory, s_now: np.ndarray) -> StepOutcome:
        """
        Plan, apply the first control for one period, and update the memory.

        Parameters
        ----------
        memory: ControllerMemory
            Executed history
        s_now: np.ndarray
            ``(n,)`` current state

        Returns
        -------
        StepOutcome
            Applied control, next state, new memory and diagnostics
        """
        started = time.perf_counter()
        s_now = np.asarray(s_now, dtype=float)
        result = self.plan(memory, s_now)
        control = result.controls[0]
        next_state = self.dyn.step_rk4(s_now, control, self.config.dt)
        memory = memory.fold(self.objective.values(s_now[None, :])[0], plan=result.controls)
        diagnostics = StepDiagnostics(
            step=memory.elapsed_steps,
            executed_metric=memory.executed_metric(self.phi, self.objective.basis.weights),
            plan_cost=result.cost,
            ilqr_iters=result.iterations,
            degraded=result.degraded,
            wall_ms=1e3 * (time.perf_counter() - started),
        )
        self.__logger.debug(
            f"Step {diagnostics.step}: metric {diagnostics.executed_metric:.6g}, {result.iterations} iLQR iterations"
        )
        return StepOutcome(control=control, next_state=next_state, memory=memory, plan=result, diagnostics=diagnostics)


def _controller(
    cfg: ControllerConfig,
    basis: BasisSet,
    model: Optional[VolumetricModel],
    dyn: DynamicsModel,
    phi: np.ndarray,
) -> RecedingHorizonController:
    if model is None:
        objective = StandardErgodicObjective(basis, dyn)
    else:
        objective = VolumetricObjective(basis, model, dyn)
    return RecedingHorizonController(cfg, objective, phi)


def plan(
    cfg: ControllerConfig,
    memory: ControllerMemory,
    basis: BasisSet,
    model: Optional[VolumetricModel],
    dyn: DynamicsModel,
    phi: np.ndarray,
    s_now: np.ndarray,
) -> PlanResult:
    """
    One-shot planning call.

    Parameters
    ----------
    cfg: ControllerConfig
        Controller settings
    memory: ControllerMemory
        Executed history
    basis: BasisSet
        The basis
    model: Optional[VolumetricModel]
        Footprint model; ``None`` plans with the point-based objective
    dyn: DynamicsModel
        Platform
    phi: np.ndarray
        Target coefficients
    s_now: np.ndarray
        Current state

    Returns
    -------
    PlanResult
        The plan
    """
    return _controller(cfg, basis, model, dyn, phi).plan(memory, s_now)


def execute_step(
    cfg: ControllerConfig,
    memory: ControllerMemory,
    basis: BasisSet,
    model: Optional[VolumetricModel],
    dyn: DynamicsModel,
    phi: np.ndarray,
    s_now: np.ndarray,
) -> StepOutcome:
    """
    One-shot receding-horizon step; see ``RecedingHorizonController.execute_step``.

    Parameters
    ----------
    cfg: ControllerConfig
        Controller settings
    memory: ControllerMemory
        Executed history
    basis: BasisSet
        The basis
    model: Optional[VolumetricModel]
        Footprint model; ``None`` plans with the point-based objective
    dyn: DynamicsModel
        Platform
    phi: np.ndarray
        Target coefficients
    s_now: np.ndarray
        Current state

    Returns
    -------
    StepOutcome
        The step
    """
    return _controller(cfg, basis, model, dyn, phi).execute_step(memory, s_now)
