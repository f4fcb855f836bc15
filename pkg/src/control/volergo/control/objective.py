"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from volergo.dynamics import DynamicsModel
from volergo.metric import ergodic_metric
from volergo.spatial import BasisSet, SearchSpace
from volergo.volumetric import VolumetricModel, basis_values, basis_values_and_gradients

from .memory import ControllerMemory


class ErgodicObjective(ABC):
    """
    Per-state basis values whose time average is compared with the target coefficients.

    Parameters
    ----------
    basis: BasisSet
        The basis
    dyn: DynamicsModel
        Platform
    """

    def __init__(self, basis: BasisSet, dyn: DynamicsModel):
        self.basis = basis
        self.dyn = dyn

    @abstractmethod
    def values(self, states: np.ndarray) -> np.ndarray:
        """``(..., n)`` states to ``(..., K)`` basis values."""

    @abstractmethod
    def values_and_gradients(self, states: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """``(..., n)`` states to ``(..., K)`` values and ``(..., K, n)`` state gradients."""


class VolumetricObjective(ErgodicObjective):
    """
    Basis values averaged over the footprint samples of each state.

    Parameters
    ----------
    basis: BasisSet
        The basis
    model: VolumetricModel
        Footprint model
    dyn: DynamicsModel
        Platform
    """

    def __init__(self, basis: BasisSet, model: VolumetricModel, dyn: DynamicsModel):
        super().__init__(basis, dyn)
        self.model = model
        model.pose_columns(dyn)

    def values(self, states: np.ndarray) -> np.ndarray:
        # noqa: D102
        return basis_values(self.basis, self.model, self.dyn, states)

    def values_and_gradients(self, states: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        # noqa: D102
        return basis_values_and_gradients(self.basis, self.model, self.dyn, states)


class StandardErgodicObjective(ErgodicObjective):
    """Basis values at the robot position only; the point-based baseline."""

    def values(self, states: np.ndarray) -> np.ndarray:
        # noqa: D102
        return self.basis.evaluate(self.dyn.position(states))

    def values_and_gradients(self, states: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        # noqa: D102
        positions = self.dyn.position(states)
        gradients = np.matmul(self.basis.gradient(positions), self.dyn.position_selector())
        return self.basis.evaluate(positions), gradients


class BoundaryBarrier:
    """
    Quadratic penalty on states that leave the search space or the altitude band.

    Each guarded state component ``x`` with bounds ``[low, high]`` adds
    ``weight * (min(x - low, 0)^2 + max(x - high, 0)^2)``.

    Parameters
    ----------
    space: SearchSpace
        Search space bounding the position
    dyn: DynamicsModel
        Platform
    weight: float
        Penalty weight
    margin: float
        Inset of the position bounds from the walls
    altitude_band: Optional[Tuple[float, float]]
        Bounds on the altitude, for platforms that have one
    """

    def __init__(
        self,
        space: SearchSpace,
        dyn: DynamicsModel,
        weight: float,
        margin: float = 0.0,
        altitude_band: Optional[Tuple[float, float]] = None,
    ):
        self.weight = float(weight)
        guards: List[Tuple[int, float, float]] = [
            (column, margin, length - margin) for column, length in zip(dyn.pose.position, space.lengths)
        ]
        if altitude_band is not None and dyn.pose.altitude is not None:
            guards.append((dyn.pose.altitude, float(altitude_band[0]), float(altitude_band[1])))
        self.columns = np.array([guard[0] for guard in guards], dtype=int)
        self.low = np.array([guard[1] for guard in guards])
        self.high = np.array([guard[2] for guard in guards])
        self.n_states = dyn.n_states

    def _violations(self, states: np.ndarray) -> np.ndarray:
        guarded = np.asarray(states, dtype=float)[..., self.columns]
        return np.minimum(guarded - self.low, 0.0) + np.maximum(guarded - self.high, 0.0)

    def value(self, states: np.ndarray) -> float:
        """
        Total penalty over a batch of states.

        Parameters
        ----------
        states: np.ndarray
            ``(T, n)`` states

        Returns
        -------
        float
            The penalty
        """
        violation = self._violations(states)
        return self.weight * float(np.sum(violation * violation))

    def derivatives(self, states: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Gradient and Hessian of the penalty of each state.

        Parameters
        ----------
        states: np.ndarray
            ``(T, n)`` states

        Returns
        -------
        Tuple[np.ndarray, np.ndarray]
            ``(T, n)`` gradients and ``(T, n, n)`` diagonal Hessians
        """
        states = np.asarray(states, dtype=float)
        violation = self._violations(states)
        gradient = np.zeros(states.shape)
        hessian = np.zeros(states.shape + (self.n_states,))
        gradient[..., self.columns] = 2.0 * self.weight * violation
        hessian[..., self.columns, self.columns] = np.where(violation != 0.0, 2.0 * self.weight, 0.0)
        return gradient, hessian


@dataclass
class CostDerivatives:
    """
    Quadratic expansion of the horizon cost along a rollout.

    Parameters
    ----------
    l_x: np.ndarray
        ``(H + 1, n)`` state gradients
    l_xx: np.ndarray
        ``(H + 1, n, n)`` state Hessians (Gauss-Newton for the ergodic term)
    l_u: np.ndarray
        ``(H, m)`` control gradients
    l_uu: np.ndarray
        ``(H, m, m)`` control Hessians
    """

    l_x: np.ndarray
    l_xx: np.ndarray
    l_u: np.ndarray
    l_uu: np.ndarray


class ErgodicHorizonCost:
    """
    Cost of one horizon: ergodic metric of the executed states plus the horizon, a control
    penalty about the nominal control, and an optional boundary barrier.

    Row 0 of every state array is the current state; it belongs to the trajectory the metric
    is computed on but cannot be changed by the controls.

    Parameters
    ----------
    objective: ErgodicObjective
        Source of per-state basis values
    memory: ControllerMemory
        Executed history
    phi: np.ndarray
        Target coefficients
    control_weight: np.ndarray
        ``(m, m)`` SPD penalty ``R``
    dt: float
        Control period
    barrier: Optional[BoundaryBarrier]
        Boundary penalty, if any
    """

    def __init__(
        self,
        objective: ErgodicObjective,
        memory: ControllerMemory,
        phi: np.ndarray,
        control_weight: np.ndarray,
        dt: float,
        barrier: Optional[BoundaryBarrier] = None,
    ):
        self.objective = objective
        self.memory = memory
        self.phi = np.asarray(phi, dtype=float)
        self.weights = objective.basis.weights
        self.control_weight = np.asarray(control_weight, dtype=float)
        self.dt = float(dt)
        self.nominal = objective.dyn.nominal_control()
        self.barrier = barrier

    def ergodic_term(self, states: np.ndarray) -> float:
        """
        Metric of the executed states followed by ``states``.

        Parameters
        ----------
        states: np.ndarray
            ``(H + 1, n)`` current state and horizon

        Returns
        -------
        float
            The ergodic metric
        """
        return ergodic_metric(self.memory.compose(self.objective.values(states)), self.phi, self.weights)

    def total(self, states: np.ndarray, controls: np.ndarray) -> float:
        """
        Full horizon cost.

        Parameters
        ----------
        states: np.ndarray
            ``(H + 1, n)`` rollout
        controls: np.ndarray
            ``(H, m)`` controls

        Returns
        -------
        float
            The cost
        """
        offset = np.asarray(controls, dtype=float) - self.nominal
        effort = self.dt * float(np.einsum("hi,ij,hj->", offset, self.control_weight, offset))
        cost = self.ergodic_term(states) + effort
        if self.barrier is not None:
            cost += self.barrier.value(states[1:])
        return cost

    def derivatives(self, states: np.ndarray, controls: np.ndarray) -> CostDerivatives:
        """
        Gradients and Gauss-Newton Hessians along a rollout.

        Parameters
        ----------
        states: np.ndarray
            ``(H + 1, n)`` rollout
        controls: np.ndarray
            ``(H, m)`` controls

        Returns
        -------
        CostDerivatives
            The expansion
        """
        values, gradients = self.objective.values_and_gradients(states)
        count = self.memory.elapsed_steps + values.shape[0]
        residual = self.weights * (self.memory.compose(values) - self.phi)
        l_x = (2.0 / count) * np.einsum("k,hkn->hn", residual, gradients)
        l_xx = (2.0 / count**2) * np.einsum("hkn,k,hkm->hnm", gradients, self.weights, gradients)
        if self.barrier is not None:
            barrier_x, barrier_xx = self.barrier.derivatives(states[1:])
            l_x[1:] += barrier_x
            l_xx[1:] += barrier_xx
        offset = np.asarray(controls, dtype=float) - self.nominal
        l_u = 2.0 * self.dt * offset @ self.control_weight
        l_uu = np.broadcast_to(2.0 * self.dt * self.control_weight, (offset.shape[0],) + self.control_weight.shape)
        return CostDerivatives(l_x=l_x, l_xx=l_xx, l_u=l_u, l_uu=np.array(l_uu))
