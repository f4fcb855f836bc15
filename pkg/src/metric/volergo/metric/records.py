"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import csv
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(eq=False)
class TrajectoryRecord:
    """
    Executed or planned trajectory sampled every ``dt`` seconds.

    Parameters
    ----------
    states: np.ndarray
        ``(T, n)`` states, ``T >= 1``
    controls: np.ndarray
        ``(T - 1, m)`` controls; control ``t`` moves state ``t`` to ``t + 1``
    dt: float
        Sampling period in seconds
    """

    states: np.ndarray
    controls: np.ndarray
    dt: float

    def __post_init__(self):
        self.states = np.atleast_2d(np.asarray(self.states, dtype=float))
        controls = np.asarray(self.controls, dtype=float)
        self.controls = controls.reshape(0, 0) if controls.size == 0 else np.atleast_2d(controls)
        if not np.isfinite(self.dt) or self.dt <= 0:
            raise ValueError("Trajectory dt must be positive, got {}".format(self.dt))
        if self.states.shape[0] < 1:
            raise ValueError("A trajectory needs at least one state")
        if self.controls.shape[0] != self.states.shape[0] - 1:
            raise ValueError(
                "{} states need {} controls, got {}".format(
                    self.states.shape[0], self.states.shape[0] - 1, self.controls.shape[0]
                )
            )

    def __len__(self) -> int:
        return self.states.shape[0]

    @property
    def duration(self) -> float:
        # noqa: D102
        return len(self) * self.dt

    def to_csv(self, path: str, state_names: Sequence[str], control_names: Sequence[str]) -> None:
        """
        Write ``step, states..., controls...`` rows; the last row has no control.

        Parameters
        ----------
        path: str
            Destination
        state_names: Sequence[str]
            Column names of the state components
        control_names: Sequence[str]
            Column names of the control components
        """
        with open(path, "w", newline="", encoding="UTF-8") as file:
            writer = csv.writer(file)
            writer.writerow(["step", *state_names, *control_names])
            for step, state in enumerate(self.states):
                if step < self.controls.shape[0]:
                    control = [repr(float(value)) for value in self.controls[step]]
                else:
                    control = [""] * len(control_names)
                writer.writerow([step] + [repr(float(value)) for value in state] + control)
