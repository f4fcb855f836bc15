"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from typing import Sequence, Tuple

import numpy as np

from .exceptions import GimbalLock, InvalidTimeStep
from .model import DynamicsModel, PoseSpec

# distance from +-pi/2 at which the Euler-rate map is considered singular
GIMBAL_MARGIN = 1e-3


class DoubleIntegrator2DOri(DynamicsModel):
    """
    Planar double integrator with an orientation channel.

    ``s = [x, y, theta, vx, vy, omega]``, ``u = [ax, ay, alpha]``.

    Parameters
    ----------
    accel_limit: float
        Bound on ``|ax|`` and ``|ay|``
    angular_accel_limit: float
        Bound on ``|alpha|``
    log: bool
        Whether to keep the logger enabled
    """

    name = "double_integrator"
    state_names = ("x", "y", "theta", "vx", "vy", "omega")
    control_names = ("ax", "ay", "alpha")
    angle_indices = (2,)
    pose = PoseSpec(position=(0, 1), heading=2)

    def __init__(self, accel_limit: float = 1.0, angular_accel_limit: float = 2.0, log: bool = True):
        high = np.array([accel_limit, accel_limit, angular_accel_limit], dtype=float)
        super().__init__(-high, high, log=log)

    def _rhs(self, s: np.ndarray, u: np.ndarray) -> np.ndarray:
        return np.concatenate([s[..., 3:6], np.broadcast_to(u, s.shape[:-1] + (3,))], axis=-1)

    def analytic_linearization(self, dt: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Exact discrete-time matrices of the double integrator.

        Parameters
        ----------
        dt: float
            Step in seconds

        Returns
        -------
        Tuple[np.ndarray, np.ndarray]
            ``A = [[I, dt I], [0, I]]`` and ``B = [[dt^2/2 I], [dt I]]``
        """
        eye = np.eye(3)
        a = np.block([[eye, dt * eye], [np.zeros((3, 3)), eye]])
        b = np.vstack([0.5 * dt**2 * eye, dt * eye])
        return a, b

    def linearize_batch(self, states: np.ndarray, controls: np.ndarray, dt: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Exact Jacobians repeated along the horizon; the system is linear.

        As in the generic linearization, saturated controls get a zero column in ``B``.

        Parameters
        ----------
        states: np.ndarray
            ``(H, n)`` states, only checked for layout
        controls: np.ndarray
            ``(H, m)`` controls, checked for layout and saturation
        dt: float
            Step in seconds

        Returns
        -------
        Tuple[np.ndarray, np.ndarray]
            ``(H, 6, 6)`` and ``(H, 6, 3)`` matrices
        """
        if not np.isfinite(dt) or dt <= 0:
            raise InvalidTimeStep(dt)
        states, controls = self._check(states, controls)
        a, b = self.analytic_linearization(dt)
        horizon = states.shape[0]
        b = np.where(self.saturated(controls)[:, None, :], 0.0, b[None])
        return np.repeat(a[None], horizon, axis=0), b

    def initial_state(self, position: Sequence[float], heading: float = 0.0) -> np.ndarray:
        # noqa: D102
        return np.array([position[0], position[1], heading, 0.0, 0.0, 0.0])


class DiffDrive2ndOrder(DynamicsModel):
    """
    Differential-drive robot with acceleration inputs.

    ``s = [x, y, theta, v, omega]``, ``u = [a, alpha]``.

    Parameters
    ----------
    accel_limit: float
        Bound on ``|a|``
    angular_accel_limit: float
        Bound on ``|alpha|``
    log: bool
        Whether to keep the logger enabled
    """

    name = "diff_drive"
    state_names = ("x", "y", "theta", "v", "omega")
    control_names = ("a", "alpha")
    angle_indices = (2,)
    pose = PoseSpec(position=(0, 1), heading=2)

    def __init__(self, accel_limit: float = 1.0, angular_accel_limit: float = 2.0, log: bool = True):
        high = np.array([accel_limit, angular_accel_limit], dtype=float)
        super().__init__(-high, high, log=log)

    def _rhs(self, s: np.ndarray, u: np.ndarray) -> np.ndarray:
        theta, v, omega = s[..., 2], s[..., 3], s[..., 4]
        u = np.broadcast_to(u, s.shape[:-1] + (2,))
        return np.stack([v * np.cos(theta), v * np.sin(theta), omega, u[..., 0], u[..., 1]], axis=-1)

    def initial_state(self, position: Sequence[float], heading: float = 0.0) -> np.ndarray:
        # noqa: D102
        return np.array([position[0], position[1], heading, 0.0, 0.0])


class Quadcopter12(DynamicsModel):
    """
    Rigid-body quadcopter with ZYX Euler attitude and wrench inputs.

    ``s = [px, py, pz, roll, pitch, yaw, vx, vy, vz, wx, wy, wz]`` with world-frame velocity and
    body-frame angular rate; ``u = [thrust, tau_x, tau_y, tau_z]``.

    Parameters
    ----------
    mass: float
        Mass in kg
    inertia: Sequence[float]
        Diagonal inertia in kg m^2
    gravity: float
        Gravitational acceleration
    max_thrust_factor: float
        Thrust upper bound as a multiple of ``m g``
    torque_limit: float
        Bound on every body torque
    initial_altitude: float
        Altitude used by ``initial_state``
    log: bool
        Whether to keep the logger enabled
    """

    name = "quadcopter"
    state_names = ("px", "py", "pz", "roll", "pitch", "yaw", "vx", "vy", "vz", "wx", "wy", "wz")
    control_names = ("thrust", "tau_x", "tau_y", "tau_z")
    angle_indices = (3, 4, 5)
    pose = PoseSpec(position=(0, 1), heading=5, altitude=2, attitude=(3, 4, 5))

    def __init__(
        self,
        mass: float = 1.0,
        inertia: Sequence[float] = (0.01, 0.01, 0.02),
        gravity: float = 9.81,
        max_thrust_factor: float = 2.0,
        torque_limit: float = 0.1,
        initial_altitude: float = 0.5,
        log: bool = True,
    ):
        self.mass = float(mass)
        self.inertia = np.asarray(inertia, dtype=float)
        self.gravity = float(gravity)
        self.initial_altitude = float(initial_altitude)
        low = np.array([0.0, -torque_limit, -torque_limit, -torque_limit])
        high = np.array([max_thrust_factor * self.mass * self.gravity, torque_limit, torque_limit, torque_limit])
        super().__init__(low, high, log=log)

    def nominal_control(self) -> np.ndarray:
        # noqa: D102
        return np.array([self.mass * self.gravity, 0.0, 0.0, 0.0])

    def _rhs(self, s: np.ndarray, u: np.ndarray) -> np.ndarray:
        roll, pitch, yaw = s[..., 3], s[..., 4], s[..., 5]
        if np.any(np.abs(pitch) >= np.pi / 2 - GIMBAL_MARGIN):
            raise GimbalLock(float(np.max(np.abs(pitch))))
        velocity, rate = s[..., 6:9], s[..., 9:12]
        u = np.broadcast_to(u, s.shape[:-1] + (4,))
        thrust, torque = u[..., 0], u[..., 1:4]

        cr, sr = np.cos(roll), np.sin(roll)
        cp, sp, tp = np.cos(pitch), np.sin(pitch), np.tan(pitch)
        cy, sy = np.cos(yaw), np.sin(yaw)

        # third column of R = Rz(yaw) Ry(pitch) Rx(roll)
        body_z = np.stack([cy * sp * cr + sy * sr, sy * sp * cr - cy * sr, cp * cr], axis=-1)
        accel = body_z * (thrust / self.mass)[..., None]
        accel[..., 2] -= self.gravity

        wx, wy, wz = rate[..., 0], rate[..., 1], rate[..., 2]
        euler_rates = np.stack(
            [wx + sr * tp * wy + cr * tp * wz, cr * wy - sr * wz, (sr * wy + cr * wz) / cp],
            axis=-1,
        )
        angular_accel = (torque - np.cross(rate, rate * self.inertia)) / self.inertia
        return np.concatenate([velocity, euler_rates, accel, angular_accel], axis=-1)

    def initial_state(self, position: Sequence[float], heading: float = 0.0) -> np.ndarray:
        # noqa: D102
        state = np.zeros(12)
        state[0:3] = [position[0], position[1], self.initial_altitude]
        state[5] = heading
        return state


PLATFORMS = {
    DoubleIntegrator2DOri.name: DoubleIntegrator2DOri,
    DiffDrive2ndOrder.name: DiffDrive2ndOrder,
    Quadcopter12.name: Quadcopter12,
}


def build_platform(name: str, parameters: dict, log: bool = True) -> DynamicsModel:
    """
    Instantiate a platform from its config section.

    Parameters
    ----------
    name: str
        ``double_integrator``, ``diff_drive`` or ``quadcopter``
    parameters: dict
        The platform's config section; ``dt`` is ignored here
    log: bool
        Whether to keep the logger enabled

    Returns
    -------
    DynamicsModel
        The platform
    """
    if name not in PLATFORMS:
        raise KeyError("Unknown platform {}".format(name))
    kwargs = {key: value for key, value in parameters.items() if key != "dt"}
    return PLATFORMS[name](log=log, **kwargs)
