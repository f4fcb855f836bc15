"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from volergo.dynamics import DynamicsModel
from volergo.metric import compensated_sum, ergodic_metric


@dataclass(frozen=True, eq=False)
class ControllerMemory:
    """
    What the receding-horizon controller carries from one step to the next.

    Parameters
    ----------
    elapsed_steps: int
        Number of executed states folded into ``running_basis_mean``
    running_basis_mean: np.ndarray
        ``(K,)`` mean of the (volumetric) basis values of the executed states
    last_plan: Optional[np.ndarray]
        ``(H, m)`` control tape of the previous plan
    """

    elapsed_steps: int
    running_basis_mean: np.ndarray
    last_plan: Optional[np.ndarray] = None

    @classmethod
    def initial(cls, n_modes: int) -> "ControllerMemory":
        """
        Memory before any step: nothing executed, no previous plan.

        Parameters
        ----------
        n_modes: int
            Number of basis modes ``K``

        Returns
        -------
        ControllerMemory
            The empty memory
        """
        return cls(elapsed_steps=0, running_basis_mean=np.zeros(n_modes))

    def fold(self, values: np.ndarray, plan: Optional[np.ndarray] = None) -> "ControllerMemory":
        """
        Add the basis values of one executed state.

        Parameters
        ----------
        values: np.ndarray
            ``(K,)`` basis values of the executed state
        plan: Optional[np.ndarray]
            Control tape to remember, if any

        Returns
        -------
        ControllerMemory
            Updated memory
        """
        count = self.elapsed_steps + 1
        mean = self.running_basis_mean + (np.asarray(values, dtype=float) - self.running_basis_mean) / count
        return replace(self, elapsed_steps=count, running_basis_mean=mean, last_plan=plan)

    def compose(self, values: np.ndarray) -> np.ndarray:
        """
        Coefficients of the executed states followed by a candidate horizon.

        Parameters
        ----------
        values: np.ndarray
            ``(T, K)`` basis values of the horizon states

        Returns
        -------
        np.ndarray
            ``(K,)`` coefficients of all ``elapsed_steps + T`` states
        """
        values = np.asarray(values, dtype=float)
        total = self.elapsed_steps * self.running_basis_mean + compensated_sum(values)
        return total / (self.elapsed_steps + values.shape[0])

    def warm_start(self, dyn: DynamicsModel, horizon_steps: int) -> np.ndarray:
        """
        Initial control tape for the next plan.

        The previous tape is shifted by one step and its last control repeated; without one,
        the platform's nominal control is held over the whole horizon.

        Parameters
        ----------
        dyn: DynamicsModel
            Platform
        horizon_steps: int
            Horizon length ``H``

        Returns
        -------
        np.ndarray
            ``(H, m)`` controls
        """
        if self.last_plan is None or self.last_plan.shape != (horizon_steps, dyn.n_controls):
            return np.tile(dyn.nominal_control(), (horizon_steps, 1))
        return np.concatenate([self.last_plan[1:], self.last_plan[-1:]])

    def executed_metric(self, phi: np.ndarray, weights: np.ndarray) -> float:
        """
        Ergodic metric of the executed trajectory so far.

        Parameters
        ----------
        phi: np.ndarray
            Target coefficients
        weights: np.ndarray
            ``lambda_k`` per mode

        Returns
        -------
        float
            The metric, ``nan`` before the first step
        """
        if self.elapsed_steps == 0:
            return float("nan")
        return ergodic_metric(self.running_basis_mean, phi, weights)
