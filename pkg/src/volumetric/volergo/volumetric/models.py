"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from abc import ABC, abstractmethod
from typing import Optional, Tuple

import numpy as np
from volergo.core import Log
from volergo.dynamics import DynamicsModel
from volergo.spatial import SearchSpace

from .exceptions import InvalidModelParameter, NonFiniteState, UnsupportedPose

FD_STEP = 1e-6


def planar_transform(body_points: np.ndarray, position: np.ndarray, heading: np.ndarray) -> np.ndarray:
    """
    Place body-frame points at planar poses: ``R(heading) p + position``.

    Parameters
    ----------
    body_points: np.ndarray
        ``(N, 2)`` points relative to the pivot
    position: np.ndarray
        ``(..., 2)`` pivot positions
    heading: np.ndarray
        ``(...,)`` headings in radians

    Returns
    -------
    np.ndarray
        ``(..., N, 2)`` world points
    """
    cos, sin = np.cos(heading)[..., None], np.sin(heading)[..., None]
    px, py = body_points[:, 0], body_points[:, 1]
    x = position[..., 0, None] + cos * px - sin * py
    y = position[..., 1, None] + sin * px + cos * py
    return np.stack([x, y], axis=-1)


class VolumetricModel(ABC):
    """
    Sample-based footprint: a differentiable map from a robot state to ``N`` search-space points.

    Subclasses implement ``_project`` for batches of states. Jacobians default to central
    finite differences over the pose components the model reads; every other column is zero.

    Parameters
    ----------
    clamp_to: Optional[SearchSpace]
        When set, sample points are clamped into this space
    log: bool
        Whether to keep the logger enabled
    """

    variant: str = ""

    def __init__(self, clamp_to: Optional[SearchSpace] = None, log: bool = True):
        self.clamp_to = clamp_to
        self._logger = Log.register_logger(__name__)
        if not log:
            Log.close(self._logger)

    @property
    @abstractmethod
    def n_samples(self) -> int:
        """Number of sample points ``N`` per state."""

    @abstractmethod
    def _project(self, s: np.ndarray, dyn: DynamicsModel) -> np.ndarray:
        """Map ``(..., n)`` states to ``(..., N, d)`` points, unclamped."""

    @abstractmethod
    def pose_columns(self, dyn: DynamicsModel) -> Tuple[int, ...]:
        """State indices the footprint depends on."""

    def _checked(self, s: np.ndarray, dyn: DynamicsModel) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        if s.shape[-1:] != (dyn.n_states,):
            raise InvalidModelParameter("state length", s.shape[-1:] or None)
        if not np.all(np.isfinite(s)):
            self._logger.error(f"{self.variant}: non-finite state {s}")
            raise NonFiniteState()
        return s

    def sample_points(self, s: np.ndarray, dyn: DynamicsModel) -> np.ndarray:
        """
        Footprint samples of one or many states.

        Parameters
        ----------
        s: np.ndarray
            ``(..., n)`` states
        dyn: DynamicsModel
            Platform providing the pose layout

        Returns
        -------
        np.ndarray
            ``(..., N, d)`` points
        """
        points = self.projected_points(s, dyn)
        if self.clamp_to is not None:
            points = self.clamp_to.clamp(points)
        return points

    def projected_points(self, s: np.ndarray, dyn: DynamicsModel) -> np.ndarray:
        """
        Footprint samples where they really fall, never clamped into the search space.

        Parameters
        ----------
        s: np.ndarray
            ``(..., n)`` states
        dyn: DynamicsModel
            Platform providing the pose layout

        Returns
        -------
        np.ndarray
            ``(..., N, d)`` points
        """
        return self._project(self._checked(s, dyn), dyn)

    def sample_jacobians(self, s: np.ndarray, dyn: DynamicsModel, step: float = FD_STEP) -> np.ndarray:
        """
        Jacobians of every sample point with respect to the state.

        Parameters
        ----------
        s: np.ndarray
            ``(..., n)`` states
        dyn: DynamicsModel
            Platform providing the pose layout
        step: float
            Central-difference step

        Returns
        -------
        np.ndarray
            ``(..., N, d, n)`` Jacobians
        """
        s = self._checked(s, dyn)
        columns = list(self.pose_columns(dyn))
        stencil = np.zeros((2 * len(columns), dyn.n_states))
        stencil[np.arange(len(columns)), columns] = step
        stencil[len(columns) + np.arange(len(columns)), columns] = -step
        points = self.sample_points(s[..., None, :] + stencil, dyn)
        slopes = (points[..., : len(columns), :, :] - points[..., len(columns) :, :, :]) / (2.0 * step)
        jacobians = np.zeros(s.shape[:-1] + (self.n_samples, points.shape[-1], dyn.n_states))
        jacobians[..., columns] = np.moveaxis(slopes, -3, -1)
        return jacobians


class Point(VolumetricModel):
    """
    Single sample at the robot position; reduces volumetric to standard ergodic control.

    Parameters
    ----------
    clamp_to: Optional[SearchSpace]
        When set, the sample is clamped into this space
    log: bool
        Whether to keep the logger enabled
    """

    variant = "point"

    @property
    def n_samples(self) -> int:
        # noqa: D102
        return 1

    def pose_columns(self, dyn: DynamicsModel) -> Tuple[int, ...]:
        # noqa: D102
        return tuple(dyn.pose.position)

    def _project(self, s: np.ndarray, dyn: DynamicsModel) -> np.ndarray:
        return dyn.position(s)[..., None, :]

    def sample_jacobians(self, s: np.ndarray, dyn: DynamicsModel, step: float = FD_STEP) -> np.ndarray:
        """
        The pose selector, broadcast over the state batch.

        Parameters
        ----------
        s: np.ndarray
            ``(..., n)`` states
        dyn: DynamicsModel
            Platform providing the pose layout
        step: float
            Unused; the map is linear

        Returns
        -------
        np.ndarray
            ``(..., 1, d, n)`` Jacobians
        """
        s = self._checked(s, dyn)
        selector = dyn.position_selector()
        return np.broadcast_to(selector, s.shape[:-1] + (1,) + selector.shape).copy()


class RigidBody(VolumetricModel):
    """
    Rigid tool footprint controlled through a pivot: ``R(theta) p_i + (x, y)``.

    Parameters
    ----------
    body_points: np.ndarray
        ``(N, 2)`` finite points relative to the pivot, in meters
    clamp_to: Optional[SearchSpace]
        When set, samples are clamped into this space
    log: bool
        Whether to keep the logger enabled
    """

    variant = "rigid_body"

    def __init__(self, body_points: np.ndarray, clamp_to: Optional[SearchSpace] = None, log: bool = True):
        super().__init__(clamp_to=clamp_to, log=log)
        body_points = np.array(body_points, dtype=float).reshape(-1, 2)
        if body_points.shape[0] == 0 or not np.all(np.isfinite(body_points)):
            raise InvalidModelParameter("body_points", body_points)
        body_points.setflags(write=False)
        self.body_points = body_points

    @property
    def n_samples(self) -> int:
        # noqa: D102
        return self.body_points.shape[0]

    def pose_columns(self, dyn: DynamicsModel) -> Tuple[int, ...]:
        # noqa: D102
        if dyn.pose.heading is None:
            raise UnsupportedPose(self.variant, dyn.name)
        return tuple(dyn.pose.position) + (dyn.pose.heading,)

    def _project(self, s: np.ndarray, dyn: DynamicsModel) -> np.ndarray:
        self.pose_columns(dyn)
        return planar_transform(self.body_points, dyn.position(s), s[..., dyn.pose.heading])

    def sample_jacobians(self, s: np.ndarray, dyn: DynamicsModel, step: float = FD_STEP) -> np.ndarray:
        """
        Closed-form Jacobians of the rigid transform (clamping is not differentiated).

        Parameters
        ----------
        s: np.ndarray
            ``(..., n)`` states
        dyn: DynamicsModel
            Platform providing the pose layout
        step: float
            Unused

        Returns
        -------
        np.ndarray
            ``(..., N, 2, n)`` Jacobians
        """
        s = self._checked(s, dyn)
        x_col, y_col, heading_col = self.pose_columns(dyn)
        heading = s[..., heading_col]
        cos, sin = np.cos(heading)[..., None], np.sin(heading)[..., None]
        px, py = self.body_points[:, 0], self.body_points[:, 1]
        jacobians = np.zeros(s.shape[:-1] + (self.n_samples, 2, dyn.n_states))
        jacobians[..., 0, x_col] = 1.0
        jacobians[..., 1, y_col] = 1.0
        jacobians[..., 0, heading_col] = -sin * px - cos * py
        jacobians[..., 1, heading_col] = cos * px - sin * py
        return jacobians
