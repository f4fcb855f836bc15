"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from volergo.core import Log

from .exceptions import IntegrationBlowUp, InvalidTimeStep, LayoutMismatch, NonFiniteInput

FD_STEP = 1e-6


@dataclass(frozen=True)
class PoseSpec:
    """
    Which state components make up the pose consumed by footprint models.

    Parameters
    ----------
    position: Tuple[int, ...]
        State indices projected into the search space
    heading: Optional[int]
        Planar heading, for tools and the LiDAR
    altitude: Optional[int]
        Height above the ground plane
    attitude: Optional[Tuple[int, int, int]]
        Roll, pitch and yaw, for the camera
    """

    position: Tuple[int, ...]
    heading: Optional[int] = None
    altitude: Optional[int] = None
    attitude: Optional[Tuple[int, int, int]] = None


def wrap_angle(angle: np.ndarray) -> np.ndarray:
    """
    Wrap angles into ``(-pi, pi]``.

    Parameters
    ----------
    angle: np.ndarray
        Angles in radians

    Returns
    -------
    np.ndarray
        Wrapped angles
    """
    return np.pi - np.mod(np.pi - angle, 2.0 * np.pi)


class DynamicsModel(ABC):
    """
    Continuous dynamics ``ds/dt = f(s, u)`` of a platform, with RK4 stepping and linearization.

    Every array method accepts leading batch axes, so whole horizons and finite-difference
    stencils are integrated in one call.

    Parameters
    ----------
    control_low: Sequence[float]
        Lower control bounds
    control_high: Sequence[float]
        Upper control bounds
    log: bool
        Whether to keep this platform's logger enabled
    """

    name: str = ""
    state_names: Tuple[str, ...] = ()
    control_names: Tuple[str, ...] = ()
    angle_indices: Tuple[int, ...] = ()
    pose: PoseSpec = PoseSpec(position=(0, 1))

    def __init__(self, control_low: Sequence[float], control_high: Sequence[float], log: bool = True):
        self.control_low = np.asarray(control_low, dtype=float)
        self.control_high = np.asarray(control_high, dtype=float)
        if not (np.all(np.isfinite(self.control_low)) and np.all(np.isfinite(self.control_high))):
            raise ValueError("Control bounds of {} must be finite".format(type(self).__name__))
        self.__logger = Log.register_logger(__name__)
        if not log:
            Log.close(self.__logger)

    @property
    def n_states(self) -> int:
        # noqa: D102
        return len(self.state_names)

    @property
    def n_controls(self) -> int:
        # noqa: D102
        return len(self.control_names)

    @abstractmethod
    def _rhs(self, s: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Right-hand side without argument checks."""

    def _check(self, s: np.ndarray, u: Optional[np.ndarray] = None) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        s = np.asarray(s, dtype=float)
        if s.shape[-1:] != (self.n_states,):
            raise LayoutMismatch(self.n_states, s.shape[-1] if s.ndim else 0)
        if not np.all(np.isfinite(s)):
            self.__logger.error(f"{self.name}: non-finite state {s}")
            raise NonFiniteInput("state")
        if u is None:
            return s, None
        u = np.asarray(u, dtype=float)
        if u.shape[-1:] != (self.n_controls,):
            raise LayoutMismatch(self.n_controls, u.shape[-1] if u.ndim else 0)
        if not np.all(np.isfinite(u)):
            self.__logger.error(f"{self.name}: non-finite control {u}")
            raise NonFiniteInput("control")
        return s, u

    def clamp_control(self, u: np.ndarray) -> np.ndarray:
        """
        Project controls onto the control box.

        Parameters
        ----------
        u: np.ndarray
            ``(..., m)`` controls

        Returns
        -------
        np.ndarray
            Clamped controls
        """
        return np.clip(u, self.control_low, self.control_high)

    def saturated(self, u: np.ndarray) -> np.ndarray:
        """
        Mark control components sitting on or beyond a bound of the box.

        Parameters
        ----------
        u: np.ndarray
            ``(..., m)`` controls

        Returns
        -------
        np.ndarray
            ``(..., m)`` booleans
        """
        u = np.asarray(u, dtype=float)
        return (u <= self.control_low) | (u >= self.control_high)

    def nominal_control(self) -> np.ndarray:
        """
        Control that holds the platform at rest; the reference of the control penalty.

        Returns
        -------
        np.ndarray
            ``(m,)`` trim control
        """
        return np.zeros(self.n_controls)

    def derivative(self, s: np.ndarray, u: np.ndarray) -> np.ndarray:
        """
        Evaluate ``f(s, u)``.

        Parameters
        ----------
        s: np.ndarray
            ``(..., n)`` states
        u: np.ndarray
            ``(..., m)`` controls

        Returns
        -------
        np.ndarray
            ``(..., n)`` state derivatives
        """
        s, u = self._check(s, u)
        return self._rhs(s, u)

    def _rk4(self, s: np.ndarray, u: np.ndarray, dt: float) -> np.ndarray:
        k1 = self._rhs(s, u)
        k2 = self._rhs(s + 0.5 * dt * k1, u)
        k3 = self._rhs(s + 0.5 * dt * k2, u)
        k4 = self._rhs(s + dt * k3, u)
        return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def wrap_angles(self, s: np.ndarray) -> np.ndarray:
        """
        Wrap the angular state components into ``(-pi, pi]``.

        Parameters
        ----------
        s: np.ndarray
            ``(..., n)`` states

        Returns
        -------
        np.ndarray
            Copy with wrapped angles
        """
        s = np.array(s, dtype=float)
        if self.angle_indices:
            s[..., self.angle_indices] = wrap_angle(s[..., self.angle_indices])
        return s

    def state_difference(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """
        ``a - b`` with angular components taken the short way round.

        Parameters
        ----------
        a: np.ndarray
            ``(..., n)`` states
        b: np.ndarray
            ``(..., n)`` states

        Returns
        -------
        np.ndarray
            ``(..., n)`` differences
        """
        delta = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
        if self.angle_indices:
            delta[..., self.angle_indices] = wrap_angle(delta[..., self.angle_indices])
        return delta

    def step_rk4(self, s: np.ndarray, u: np.ndarray, dt: float) -> np.ndarray:
        """
        Advance one control period with classical RK4 and zero-order-hold control.

        Controls are clamped to the box first and angles are wrapped after the step.

        Parameters
        ----------
        s: np.ndarray
            ``(..., n)`` states
        u: np.ndarray
            ``(..., m)`` controls
        dt: float
            Step in seconds

        Returns
        -------
        np.ndarray
            ``(..., n)`` next states

        Raises
        ------
        InvalidTimeStep
            If ``dt`` is not positive
        IntegrationBlowUp
            If the step produced a non-finite state
        """
        if not np.isfinite(dt) or dt <= 0:
            raise InvalidTimeStep(dt)
        s, u = self._check(s, u)
        s_next = self._rk4(s, self.clamp_control(u), dt)
        if not np.all(np.isfinite(s_next)):
            self.__logger.error(f"{self.name}: RK4 blow-up from {s} with dt={dt}")
            raise IntegrationBlowUp(dt)
        return self.wrap_angles(s_next)

    def linearize_batch(self, states: np.ndarray, controls: np.ndarray, dt: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Discrete-time Jacobians of the RK4 step along a whole horizon.

        Central differences with step ``FD_STEP`` around the clamped controls; every
        perturbed state of every horizon step is integrated in a single batched call.
        Columns of ``B`` belonging to saturated controls are zero: ``step_rk4`` clamps them.

        Parameters
        ----------
        states: np.ndarray
            ``(H, n)`` linearization states
        controls: np.ndarray
            ``(H, m)`` linearization controls
        dt: float
            Step in seconds

        Returns
        -------
        Tuple[np.ndarray, np.ndarray]
            ``A`` of shape ``(H, n, n)`` and ``B`` of shape ``(H, n, m)``
        """
        if not np.isfinite(dt) or dt <= 0:
            raise InvalidTimeStep(dt)
        states, controls = self._check(states, controls)
        controls = self.clamp_control(controls)
        n, m = self.n_states, self.n_controls
        stencil_s = np.concatenate([np.eye(n), -np.eye(n)]) * FD_STEP
        stencil_u = np.concatenate([np.eye(m), -np.eye(m)]) * FD_STEP

        shifted_s = states[:, None, :] + stencil_s
        held_u = np.broadcast_to(controls[:, None, :], shifted_s.shape[:-1] + (m,))
        held_s = np.broadcast_to(states[:, None, :], (states.shape[0], 2 * m, n))
        shifted_u = controls[:, None, :] + stencil_u

        out_s = self._rk4(shifted_s, held_u, dt)
        out_u = self._rk4(held_s, shifted_u, dt)
        a = np.swapaxes(out_s[:, :n] - out_s[:, n:], 1, 2) / (2.0 * FD_STEP)
        b = np.swapaxes(out_u[:, :m] - out_u[:, m:], 1, 2) / (2.0 * FD_STEP)
        return a, np.where(self.saturated(controls)[:, None, :], 0.0, b)

    def linearize(self, s: np.ndarray, u: np.ndarray, dt: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Discrete-time Jacobians of the RK4 step by central finite differences.

        Parameters
        ----------
        s: np.ndarray
            ``(n,)`` state
        u: np.ndarray
            ``(m,)`` control
        dt: float
            Step in seconds

        Returns
        -------
        Tuple[np.ndarray, np.ndarray]
            ``A = d step / d s`` and ``B = d step / d u``
        """
        a, b = DynamicsModel.linearize_batch(self, np.atleast_2d(s), np.atleast_2d(u), dt)
        return a[0], b[0]

    def position(self, s: np.ndarray) -> np.ndarray:
        """
        Extract the search-space position.

        Parameters
        ----------
        s: np.ndarray
            ``(..., n)`` states

        Returns
        -------
        np.ndarray
            ``(..., len(pose.position))`` positions
        """
        return np.asarray(s, dtype=float)[..., list(self.pose.position)]

    def position_selector(self) -> np.ndarray:
        """
        Matrix mapping a state onto its search-space position.

        Returns
        -------
        np.ndarray
            ``(len(pose.position), n)`` 0/1 selector
        """
        selector = np.zeros((len(self.pose.position), self.n_states))
        selector[np.arange(len(self.pose.position)), list(self.pose.position)] = 1.0
        return selector

    def pose_columns(self) -> Tuple[int, ...]:
        """
        State indices any footprint of this platform can depend on.

        Returns
        -------
        Tuple[int, ...]
            Sorted indices
        """
        columns = set(self.pose.position)
        for extra in (self.pose.heading, self.pose.altitude):
            if extra is not None:
                columns.add(extra)
        columns.update(self.pose.attitude or ())
        return tuple(sorted(columns))

    @abstractmethod
    def initial_state(self, position: Sequence[float], heading: float = 0.0) -> np.ndarray:
        """
        State at rest at a given position and heading.

        Parameters
        ----------
        position: Sequence[float]
            Planar position
        heading: float
            Heading in radians

        Returns
        -------
        np.ndarray
            ``(n,)`` state
        """
