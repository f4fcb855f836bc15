"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import time
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from volergo.core import Log, PlanDegradedWarning
from volergo.dynamics import DynamicsModel, GimbalLock, IntegrationBlowUp, NonFiniteInput
from volergo.volumetric import CameraBelowGround, NonFiniteState

from .config import ControllerConfig
from .exceptions import RolloutDiverged
from .objective import CostDerivatives, ErgodicHorizonCost

# failures of a candidate rollout; the candidate is scored as infinitely expensive
ROLLOUT_FAILURES = (
    GimbalLock,
    IntegrationBlowUp,
    NonFiniteInput,
    CameraBelowGround,
    NonFiniteState,
    FloatingPointError,
)


@dataclass
class PlanResult:
    """
    Outcome of one iLQR solve over the horizon.

    Parameters
    ----------
    controls: np.ndarray
        ``(H, m)`` optimized, clamped controls
    states: np.ndarray
        ``(H + 1, n)`` their rollout from the current state
    cost: float
        Final horizon cost
    initial_cost: float
        Cost of the warm-start tape
    cost_history: List[float]
        Cost after every accepted iteration, starting with ``initial_cost``
    iterations: int
        Accepted iterations
    line_search_trials: List[int]
        Trials used by each forward pass
    degraded: bool
        Whether regularization hit its ceiling
    mu: float
        Regularization at exit
    wall_ms: float
        Solver wall time, excluded from comparisons
    """

    controls: np.ndarray
    states: np.ndarray
    cost: float
    initial_cost: float
    cost_history: List[float]
    iterations: int
    line_search_trials: List[int]
    degraded: bool
    mu: float
    wall_ms: float = field(default=0.0, compare=False)


class ILQRSolver:
    """
    Iterative LQR with Levenberg-Marquardt regularization and a backtracking line search.

    Parameters
    ----------
    config: ControllerConfig
        Solver settings
    dyn: DynamicsModel
        Platform
    log: bool
        Whether to keep the logger enabled
    """

    def __init__(self, config: ControllerConfig, dyn: DynamicsModel, log: bool = True):
        self.config = config
        self.dyn = dyn
        self.__logger = Log.register_logger(__name__)
        if not log:
            Log.close(self.__logger)

    def rollout(self, s0: np.ndarray, controls: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Integrate a control tape from ``s0``.

        Parameters
        ----------
        s0: np.ndarray
            ``(n,)`` initial state
        controls: np.ndarray
            ``(H, m)`` controls

        Returns
        -------
        Tuple[np.ndarray, np.ndarray]
            ``(H + 1, n)`` states and the ``(H, m)`` clamped controls
        """
        controls = self.dyn.clamp_control(np.asarray(controls, dtype=float))
        states = np.empty((controls.shape[0] + 1, self.dyn.n_states))
        states[0] = s0
        for t, u in enumerate(controls):
            states[t + 1] = self.dyn.step_rk4(states[t], u, self.config.dt)
        return states, controls

    def _evaluate(self, cost: ErgodicHorizonCost, s0: np.ndarray, controls: np.ndarray):
        try:
            with np.errstate(over="raise", invalid="raise"):
                states, controls = self.rollout(s0, controls)
                value = cost.total(states, controls)
        except ROLLOUT_FAILURES as error:
            self.__logger.debug(f"Rollout rejected: {error}")
            return None, controls, np.inf
        return states, controls, value if np.isfinite(value) else np.inf

    def backward_pass(
        self, a: np.ndarray, b: np.ndarray, derivatives: CostDerivatives, mu: float
    ) -> Optional[Tuple[np.ndarray, np.ndarray, float, float]]:
        """
        Riccati recursion for the feedforward and feedback gains.

        ``mu`` is added to the value Hessian before it is propagated through ``B``.

        Parameters
        ----------
        a: np.ndarray
            ``(H, n, n)`` state Jacobians
        b: np.ndarray
            ``(H, n, m)`` control Jacobians
        derivatives: CostDerivatives
            Cost expansion along the rollout
        mu: float
            Regularization

        Returns
        -------
        Optional[Tuple[np.ndarray, np.ndarray, float, float]]
            Gains ``k`` ``(H, m)`` and ``K`` ``(H, m, n)`` and the terms ``d1``, ``d2`` of the predicted
            change ``alpha d1 + alpha^2 d2``; ``None`` when some ``Q_uu`` is not positive definite
        """
        horizon, n = a.shape[0], a.shape[1]
        m = b.shape[2]
        k = np.zeros((horizon, m))
        gain = np.zeros((horizon, m, n))
        v_x = derivatives.l_x[-1].copy()
        v_xx = derivatives.l_xx[-1].copy()
        d1 = d2 = 0.0
        shift = mu * np.eye(n)
        for t in reversed(range(horizon)):
            a_t, b_t = a[t], b[t]
            q_x = derivatives.l_x[t] + a_t.T @ v_x
            q_u = derivatives.l_u[t] + b_t.T @ v_x
            q_xx = derivatives.l_xx[t] + a_t.T @ v_xx @ a_t
            q_uu = derivatives.l_uu[t] + b_t.T @ (v_xx + shift) @ b_t
            q_ux = b_t.T @ (v_xx + shift) @ a_t
            try:
                factor = cho_factor(0.5 * (q_uu + q_uu.T))
            except LinAlgError:
                return None
            k[t] = -cho_solve(factor, q_u)
            gain[t] = -cho_solve(factor, q_ux)
            d1 += float(k[t] @ q_u)
            d2 += 0.5 * float(k[t] @ q_uu @ k[t])
            v_x = q_x + gain[t].T @ q_uu @ k[t] + gain[t].T @ q_u + q_ux.T @ k[t]
            v_xx = q_xx + gain[t].T @ q_uu @ gain[t] + gain[t].T @ q_ux + q_ux.T @ gain[t]
            v_xx = 0.5 * (v_xx + v_xx.T)
        return k, gain, d1, d2

    def forward_pass(
        self,
        cost: ErgodicHorizonCost,
        states: np.ndarray,
        controls: np.ndarray,
        k: np.ndarray,
        gain: np.ndarray,
        d1: float,
        d2: float,
        current: float,
    ) -> Tuple[Optional[Tuple[np.ndarray, np.ndarray, float]], int, bool]:
        """
        Backtracking line search along ``u = u_bar + alpha k + K (x - x_bar)``.

        Parameters
        ----------
        cost: ErgodicHorizonCost
            Horizon cost
        states: np.ndarray
            ``(H + 1, n)`` nominal rollout
        controls: np.ndarray
            ``(H, m)`` nominal controls
        k: np.ndarray
            Feedforward gains
        gain: np.ndarray
            Feedback gains
        d1: float
            Linear term of the predicted change
        d2: float
            Quadratic term of the predicted change
        current: float
            Cost of the nominal rollout

        Returns
        -------
        Tuple[Optional[Tuple[np.ndarray, np.ndarray, float]], int, bool]
            The accepted states, controls and cost (or ``None``), the number of trials, and
            whether the predicted reduction was already negligible
        """
        cfg = self.config
        negligible = -(d1 + d2) <= cfg.convergence_tol * max(abs(current), 1e-12)
        alpha = 1.0
        trials = 0
        for trials in range(1, cfg.max_line_search + 1):
            candidate = np.empty_like(controls)
            x = states[0].copy()
            new_states = np.empty_like(states)
            new_states[0] = x
            try:
                with np.errstate(over="raise", invalid="raise"):
                    for t in range(controls.shape[0]):
                        offset = self.dyn.state_difference(x, states[t])
                        candidate[t] = self.dyn.clamp_control(controls[t] + alpha * k[t] + gain[t] @ offset)
                        x = self.dyn.step_rk4(x, candidate[t], cfg.dt)
                        new_states[t + 1] = x
                    value = cost.total(new_states, candidate)
            except ROLLOUT_FAILURES as error:
                self.__logger.debug(f"Line search trial {trials} rejected: {error}")
                value = np.inf
            expected = -(alpha * d1 + alpha**2 * d2)
            if negligible:
                if value <= current:
                    return (new_states, candidate, value), trials, True
                return None, trials, True
            if np.isfinite(value) and current - value >= cfg.armijo * expected:
                return (new_states, candidate, value), trials, False
            alpha *= cfg.backtracking
        return None, trials, False

    def solve(self, cost: ErgodicHorizonCost, s0: np.ndarray, initial_controls: np.ndarray) -> PlanResult:
        """
        Optimize a control tape for the horizon starting at ``s0``.

        Parameters
        ----------
        cost: ErgodicHorizonCost
            Horizon cost
        s0: np.ndarray
            ``(n,)`` current state
        initial_controls: np.ndarray
            ``(H, m)`` warm start

        Returns
        -------
        PlanResult
            The plan; its cost never exceeds the warm start's

        Raises
        ------
        RolloutDiverged
            If neither the warm start nor the nominal tape can be rolled out
        """
        started = time.perf_counter()
        cfg = self.config
        s0 = np.asarray(s0, dtype=float)
        states, controls, current = self._evaluate(cost, s0, initial_controls)
        if states is None:
            self.__logger.warning("Warm start is not feasible, falling back to the nominal control")
            nominal = np.tile(self.dyn.nominal_control(), (cfg.horizon_steps, 1))
            states, controls, current = self._evaluate(cost, s0, nominal)
            if states is None:
                self.__logger.error("Nominal control tape is not feasible either")
                raise RolloutDiverged(cost.memory.elapsed_steps)

        history = [current]
        trials_used: List[int] = []
        mu = cfg.mu_init
        degraded = False
        iterations = 0
        for _ in range(cfg.max_iters):
            a, b = self.dyn.linearize_batch(states[:-1], controls, cfg.dt)
            derivatives = cost.derivatives(states, controls)
            accepted, stop = None, False
            while accepted is None:
                gains = self.backward_pass(a, b, derivatives, mu)
                if gains is not None:
                    accepted, trials, stop = self.forward_pass(cost, states, controls, *gains, current)
                    trials_used.append(trials)
                    if stop:
                        break
                if accepted is None:
                    mu = max(mu * cfg.mu_growth, cfg.mu_floor)
                    if mu > cfg.mu_max:
                        degraded = True
                        break
            if degraded:
                message = f"iLQR regularization exceeded {cfg.mu_max}; executing the best tape found"
                self.__logger.warning(message)
                warnings.warn(message, PlanDegradedWarning)
                break
            if accepted is None:
                break
            new_states, new_controls, value = accepted
            iterations += 1
            mu *= cfg.mu_shrink
            decrease = (current - value) / max(abs(current), 1e-12)
            states, controls, current = new_states, new_controls, value
            history.append(current)
            if stop or decrease < cfg.convergence_tol:
                break

        wall_ms = 1e3 * (time.perf_counter() - started)
        self.__logger.debug(f"iLQR: {iterations} iterations, cost {history[0]} -> {current}, mu {mu}")
        return PlanResult(
            controls=controls,
            states=states,
            cost=current,
            initial_cost=history[0],
            cost_history=history,
            iterations=iterations,
            line_search_trials=trials_used,
            degraded=degraded,
            mu=mu,
            wall_ms=wall_ms,
        )
