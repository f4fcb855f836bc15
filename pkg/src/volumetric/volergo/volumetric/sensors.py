"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from typing import Optional, Tuple

import numpy as np
from volergo.dynamics import DynamicsModel
from volergo.spatial import SearchSpace

from .exceptions import CameraBelowGround, InvalidModelParameter, UnsupportedPose
from .models import VolumetricModel, planar_transform


def _centered(count: int, half_width: float) -> np.ndarray:
    # evenly spread over [-half_width, half_width], a lone sample sits at 0
    if count == 1:
        return np.zeros(1)
    return np.linspace(-half_width, half_width, count)


def euler_zyx(roll: np.ndarray, pitch: np.ndarray, yaw: np.ndarray) -> np.ndarray:
    """
    Body-to-world rotation ``Rz(yaw) Ry(pitch) Rx(roll)``.

    Parameters
    ----------
    roll: np.ndarray
        Roll angles
    pitch: np.ndarray
        Pitch angles
    yaw: np.ndarray
        Yaw angles

    Returns
    -------
    np.ndarray
        ``(..., 3, 3)`` rotations
    """
    cr, sr = np.cos(roll), np.sin(roll)
    cp, sp = np.cos(pitch), np.sin(pitch)
    cy, sy = np.cos(yaw), np.sin(yaw)
    return np.stack(
        [
            np.stack([cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr], axis=-1),
            np.stack([sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr], axis=-1),
            np.stack([-sp, cp * sr, cp * cr], axis=-1),
        ],
        axis=-2,
    )


class LidarWedge(VolumetricModel):
    """
    Forward-facing solid-state LiDAR: a fan of beams sampled uniformly in range.

    Uniform radial spacing puts more samples per unit area close to the robot.

    Parameters
    ----------
    fov: float
        Full field of view in radians, in ``(0, 2 pi)``
    max_range: float
        Beam length in meters
    n_radial: int
        Samples per beam
    n_angular: int
        Number of beams
    min_range_fraction: float
        Innermost sample radius as a fraction of ``max_range``
    clamp_to: Optional[SearchSpace]
        When set, samples are clamped into this space
    log: bool
        Whether to keep the logger enabled
    """

    variant = "lidar"

    def __init__(
        self,
        fov: float,
        max_range: float,
        n_radial: int = 25,
        n_angular: int = 40,
        min_range_fraction: float = 0.01,
        clamp_to: Optional[SearchSpace] = None,
        log: bool = True,
    ):
        super().__init__(clamp_to=clamp_to, log=log)
        if not 0 < fov < 2 * np.pi:
            raise InvalidModelParameter("fov", fov)
        if max_range <= 0:
            raise InvalidModelParameter("max_range", max_range)
        if n_radial < 1 or n_angular < 1:
            raise InvalidModelParameter("grid", (n_radial, n_angular))
        self.fov = float(fov)
        self.max_range = float(max_range)
        radii = np.linspace(min_range_fraction * max_range, max_range, n_radial)
        angles = _centered(n_angular, fov / 2.0)
        radius, angle = np.meshgrid(radii, angles, indexing="ij")
        body = np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=-1).reshape(-1, 2)
        body.setflags(write=False)
        self.body_points = body

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


class RaycastCamera(VolumetricModel):
    """
    Downward pinhole camera whose pixel rays are intersected with the ground plane ``z = 0``.

    The camera frame shares the body axes (x forward, y left, z up) and looks along ``-z``.
    The mount pitches the camera forward by ``tilt`` before the body attitude is applied.
    Rays that do not reach the ground within ``clip_range`` stop at ``clip_range``.

    Parameters
    ----------
    h_fov: float
        Cross-track field of view in radians
    v_fov: float
        Along-track field of view in radians
    n_u: int
        Pixel columns
    n_v: int
        Pixel rows
    tilt: float
        Forward mount pitch in radians
    clip_range: float
        Longest ray in meters
    clamp_to: Optional[SearchSpace]
        When set, ground points are clamped into this space
    log: bool
        Whether to keep the logger enabled
    """

    variant = "camera"

    def __init__(
        self,
        h_fov: float,
        v_fov: float,
        n_u: int = 40,
        n_v: int = 25,
        tilt: float = np.deg2rad(20.0),
        clip_range: float = 5.0,
        clamp_to: Optional[SearchSpace] = None,
        log: bool = True,
    ):
        super().__init__(clamp_to=clamp_to, log=log)
        for name, value in (("h_fov", h_fov), ("v_fov", v_fov)):
            if not 0 < value < np.pi:
                raise InvalidModelParameter(name, value)
        if n_u < 1 or n_v < 1:
            raise InvalidModelParameter("grid", (n_u, n_v))
        if clip_range <= 0:
            raise InvalidModelParameter("clip_range", clip_range)
        self.tilt = float(tilt)
        self.clip_range = float(clip_range)
        # pixel centers on the unit image plane
        along = _centered(n_v, np.tan(v_fov / 2.0) * (1.0 - 1.0 / n_v))
        across = _centered(n_u, np.tan(h_fov / 2.0) * (1.0 - 1.0 / n_u))
        a, c = np.meshgrid(along, across, indexing="ij")
        rays = np.stack([a, c, -np.ones_like(a)], axis=-1).reshape(-1, 3)
        rays /= np.linalg.norm(rays, axis=-1, keepdims=True)
        mount = np.array(
            [[np.cos(tilt), 0.0, np.sin(tilt)], [0.0, 1.0, 0.0], [-np.sin(tilt), 0.0, np.cos(tilt)]]
        ).T
        rays = rays @ mount.T
        rays.setflags(write=False)
        self.rays = rays

    @property
    def n_samples(self) -> int:
        # noqa: D102
        return self.rays.shape[0]

    def pose_columns(self, dyn: DynamicsModel) -> Tuple[int, ...]:
        # noqa: D102
        if dyn.pose.altitude is None or dyn.pose.attitude is None:
            raise UnsupportedPose(self.variant, dyn.name)
        return tuple(dyn.pose.position) + (dyn.pose.altitude,) + tuple(dyn.pose.attitude)

    def _project(self, s: np.ndarray, dyn: DynamicsModel) -> np.ndarray:
        self.pose_columns(dyn)
        altitude = s[..., dyn.pose.altitude]
        if np.any(altitude <= 0):
            lowest = float(np.min(altitude))
            self._logger.error(f"Camera placed at altitude {lowest}")
            raise CameraBelowGround(lowest)
        roll, pitch, yaw = (s[..., index] for index in dyn.pose.attitude)
        world = np.einsum("...ij,nj->...ni", euler_zyx(roll, pitch, yaw), self.rays)
        down = world[..., 2]
        reach = np.full(down.shape, self.clip_range)
        hits = down < 0
        np.divide(-altitude[..., None] * np.ones_like(down), down, out=reach, where=hits)
        reach = np.minimum(reach, self.clip_range)
        return dyn.position(s)[..., None, :] + reach[..., None] * world[..., :2]
