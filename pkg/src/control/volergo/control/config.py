"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from dataclasses import dataclass, fields
from typing import Sequence, Tuple, Union

import numpy as np

from .exceptions import InvalidControllerConfig


@dataclass(frozen=True)
class ControllerConfig:
    """
    Settings of the receding-horizon iLQR controller.

    The same settings drive the volumetric controller and the point-based baseline.

    Parameters
    ----------
    horizon_steps: int
        Planning horizon ``H``, at least 2
    dt: float
        Control period in seconds
    control_weight: Union[float, Sequence[float], Sequence[Sequence[float]]]
        Control penalty ``R``: scalar times identity, diagonal, or full SPD matrix
    max_iters: int
        iLQR iterations per plan
    backtracking: float
        Line-search shrink factor in (0, 1)
    max_line_search: int
        Line-search trials per iteration
    armijo: float
        Required ratio of actual to predicted cost reduction
    mu_init: float
        Initial regularization added to the value Hessian
    mu_growth: float
        Factor applied to ``mu`` after a failed backward or forward pass
    mu_shrink: float
        Factor applied to ``mu`` after an accepted step
    mu_max: float
        Regularization ceiling; the plan is marked degraded beyond it
    mu_floor: float
        Smallest ``mu`` used after a failure
    convergence_tol: float
        Relative cost decrease below which iterations stop
    barrier_weight: float
        Weight of the boundary barrier; 0 disables it
    barrier_margin: float
        Distance from the walls where the barrier starts
    altitude_band: Tuple[float, float]
        Altitude interval kept by the barrier on platforms that fly
    """

    horizon_steps: int = 20
    dt: float = 0.1
    control_weight: Union[float, Sequence[float], Sequence[Sequence[float]]] = 0.01
    max_iters: int = 10
    backtracking: float = 0.5
    max_line_search: int = 10
    armijo: float = 1e-4
    mu_init: float = 1e-6
    mu_growth: float = 10.0
    mu_shrink: float = 0.1
    mu_max: float = 1e10
    mu_floor: float = 1e-6
    convergence_tol: float = 1e-6
    barrier_weight: float = 100.0
    barrier_margin: float = 0.0
    altitude_band: Tuple[float, float] = (0.2, 2.0)

    def __post_init__(self):
        if isinstance(self.control_weight, (list, tuple, np.ndarray)):
            object.__setattr__(self, "control_weight", np.asarray(self.control_weight, dtype=float).tolist())
        object.__setattr__(self, "altitude_band", tuple(float(value) for value in self.altitude_band))
        checks = (
            ("horizon_steps", isinstance(self.horizon_steps, int) and self.horizon_steps >= 2, "must be >= 2"),
            ("dt", np.isfinite(self.dt) and self.dt > 0, "must be positive"),
            ("max_iters", isinstance(self.max_iters, int) and self.max_iters >= 1, "must be an integer >= 1"),
            ("backtracking", 0 < self.backtracking < 1, "must lie in (0, 1)"),
            ("max_line_search", isinstance(self.max_line_search, int) and self.max_line_search >= 1, "must be >= 1"),
            ("armijo", 0 < self.armijo < 1, "must lie in (0, 1)"),
            ("mu_init", self.mu_init >= 0, "must be non-negative"),
            ("mu_growth", self.mu_growth > 1, "must exceed 1"),
            ("mu_shrink", 0 < self.mu_shrink < 1, "must lie in (0, 1)"),
            ("mu_max", self.mu_max > max(self.mu_init, self.mu_floor), "must exceed mu_init and mu_floor"),
            ("mu_floor", self.mu_floor > 0, "must be positive"),
            ("convergence_tol", self.convergence_tol > 0, "must be positive"),
            ("barrier_weight", self.barrier_weight >= 0, "must be non-negative"),
            ("barrier_margin", self.barrier_margin >= 0, "must be non-negative"),
            (
                "altitude_band",
                len(self.altitude_band) == 2 and 0 < self.altitude_band[0] < self.altitude_band[1],
                "must be an increasing pair of positive altitudes",
            ),
        )
        for name, valid, reason in checks:
            if not valid:
                raise InvalidControllerConfig(name, reason)
        if isinstance(self.control_weight, (int, float)) and not self.control_weight > 0:
            raise InvalidControllerConfig("control_weight", "must be positive")

    def control_weight_matrix(self, n_controls: int) -> np.ndarray:
        """
        Expand ``control_weight`` into an ``(m, m)`` matrix and check it is SPD.

        Parameters
        ----------
        n_controls: int
            Control dimension ``m``

        Returns
        -------
        np.ndarray
            The penalty matrix ``R``

        Raises
        ------
        InvalidControllerConfig
            If the weight has the wrong shape or is not positive definite
        """
        weight = np.asarray(self.control_weight, dtype=float)
        if weight.ndim == 0:
            matrix = float(weight) * np.eye(n_controls)
        elif weight.shape == (n_controls,):
            matrix = np.diag(weight)
        elif weight.shape == (n_controls, n_controls):
            matrix = weight
        else:
            reason = "shape {} does not fit {} controls".format(weight.shape, n_controls)
            raise InvalidControllerConfig("control_weight", reason)
        if not np.allclose(matrix, matrix.T):
            raise InvalidControllerConfig("control_weight", "must be symmetric")
        try:
            np.linalg.cholesky(matrix)
        except np.linalg.LinAlgError:
            raise InvalidControllerConfig("control_weight", "must be positive definite")
        return matrix

    @classmethod
    def from_section(cls, section: dict, dt: float) -> "ControllerConfig":
        """
        Build from the ``controller`` section of a run configuration.

        Parameters
        ----------
        section: dict
            Controller settings; unknown keys are ignored
        dt: float
            The platform's control period

        Returns
        -------
        ControllerConfig
            The settings
        """
        names = {item.name for item in fields(cls)}
        return cls(dt=dt, **{key: value for key, value in section.items() if key in names and key != "dt"})
