"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree
from volergo.control import ControllerConfig
from volergo.core import Log, RunConfig, constants
from volergo.dynamics import DynamicsModel, build_platform
from volergo.spatial import (
    BasisSet,
    CoefficientVector,
    SearchSpace,
    TargetDistribution,
    build_basis,
    load_grid_density,
    randomized_mixture,
    sample_gmm,
    target_coefficients,
)
from volergo.volumetric import LidarWedge, RaycastCamera, RigidBody, VolumetricModel, load_body_points

from .exceptions import ConfigurationMismatch, UnknownSuite
from .progress import ErasingProgress, MetricOnlyProgress, SearchProgress, TaskProgress
from .shapes import occupied_centers, target_density, tool_points

# platform each suite is bound to; q1 runs on any of them
SUITE_PLATFORMS = {
    "erasing": "double_integrator",
    "ground": "diff_drive",
    "aerial": "quadcopter",
}

_logger = Log.register_logger(__name__)


@dataclass(eq=False)
class Scenario:
    """
    Everything a trial needs, drawn from one seed.

    Both methods of a seed get the same scenario; only the controller objective differs.

    Parameters
    ----------
    suite: str
        Benchmark suite
    seed: int
        Trial seed
    space: SearchSpace
        Search space
    basis: BasisSet
        Fourier basis
    target: TargetDistribution
        Coverage target
    phi: CoefficientVector
        Target coefficients
    dyn: DynamicsModel
        Platform
    model: VolumetricModel
        Real footprint of the platform's tool or sensor
    controller: ControllerConfig
        Controller settings
    initial_state: np.ndarray
        State at rest where the trial starts
    budget: int
        Step budget of the suite
    max_steps: int
        Truncation limit
    target_points: Optional[np.ndarray]
        Points to erase (erasing)
    erase_radius: Optional[float]
        Erase distance (erasing)
    targets: Optional[np.ndarray]
        Hidden targets (search)
    detection_radius: Optional[float]
        Detection distance (search)
    """

    suite: str
    seed: int
    space: SearchSpace
    basis: BasisSet
    target: TargetDistribution
    phi: CoefficientVector
    dyn: DynamicsModel
    model: VolumetricModel
    controller: ControllerConfig
    initial_state: np.ndarray
    budget: int
    max_steps: int
    target_points: Optional[np.ndarray] = None
    erase_radius: Optional[float] = None
    targets: Optional[np.ndarray] = None
    detection_radius: Optional[float] = None

    def progress(self) -> TaskProgress:
        """
        Fresh completion tracker for this scenario.

        Returns
        -------
        TaskProgress
            Erasing, search, or metric-only progress
        """
        if self.target_points is not None:
            return ErasingProgress(self.target_points, self.erase_radius)
        if self.targets is not None:
            return SearchProgress(self.targets, self.detection_radius)
        return MetricOnlyProgress()


def resolve_platform(suite: str, platform: Optional[str], config: RunConfig) -> str:
    """
    Platform a suite runs on.

    Parameters
    ----------
    suite: str
        Benchmark suite
    platform: Optional[str]
        Requested platform; q1 falls back to ``task.platform``
    config: RunConfig
        Run configuration

    Returns
    -------
    str
        Platform name

    Raises
    ------
    UnknownSuite
        If the suite does not exist
    ConfigurationMismatch
        If a fixed-platform suite is asked to run on another platform
    """
    if suite not in constants["Suites"]:
        raise UnknownSuite(suite)
    if suite == "q1":
        return platform or config.get("task.platform")
    bound = SUITE_PLATFORMS[suite]
    if platform is not None and platform != bound:
        _logger.error(f"Suite {suite} requested on {platform}")
        raise ConfigurationMismatch(suite, "it runs on {}, not {}".format(bound, platform))
    return bound


def _tool(config: RunConfig, rng: np.random.Generator) -> RigidBody:
    rigid = config.section("volumetric")["rigid_body"]
    if rigid.get("tool_file"):
        body = load_body_points(rigid["tool_file"])
        body = body - rng.uniform(body.min(axis=0), body.max(axis=0))
    else:
        body = tool_points(rigid["tool"], rigid["tool_size"], config.get("volumetric.n_samples"), rng)
    return RigidBody(body)


def _sensor(config: RunConfig, platform: str, rng: np.random.Generator, space: SearchSpace) -> VolumetricModel:
    volumetric = config.section("volumetric")
    if platform == "double_integrator":
        return _tool(config, rng)
    if platform == "diff_drive":
        lidar = volumetric["lidar"]
        return LidarWedge(
            np.deg2rad(lidar["fov_deg"]),
            lidar["range_fraction"] * space.min_length,
            n_radial=lidar["n_radial"],
            n_angular=lidar["n_angular"],
            min_range_fraction=lidar["min_range_fraction"],
        )
    camera = volumetric["camera"]
    return RaycastCamera(
        np.deg2rad(camera["h_fov_deg"]),
        np.deg2rad(camera["v_fov_deg"]),
        n_u=camera["n_u"],
        n_v=camera["n_v"],
        tilt=np.deg2rad(camera["tilt_deg"]),
        clip_range=camera["clip_range"],
        clamp_to=space,
    )


def sample_spacing(points: np.ndarray) -> float:
    """
    Median distance from each sample to its nearest neighbour.

    Parameters
    ----------
    points: np.ndarray
        ``(N, d)`` samples, ``N >= 2``

    Returns
    -------
    float
        The spacing
    """
    distance, _ = cKDTree(points).query(points, k=2)
    return float(np.median(distance[:, 1]))


def build_scenario(config: RunConfig, suite: str, seed: int, platform: Optional[str] = None) -> Scenario:
    """
    Draw the scenario of one trial.

    Random draws happen in a fixed order from one generator seeded with ``seed``: target,
    footprint pivot, hidden targets, initial position, initial heading.

    Parameters
    ----------
    config: RunConfig
        Run configuration
    suite: str
        Benchmark suite
    seed: int
        Trial seed
    platform: Optional[str]
        Platform for q1; must match the bound platform otherwise

    Returns
    -------
    Scenario
        The scenario
    """
    platform = resolve_platform(suite, platform, config)
    task = config.section("task")
    search = task["search"]
    rng = np.random.default_rng(seed)
    space = SearchSpace(config.get("space.lengths"))
    basis = build_basis(space, config.get("basis.modes_per_dim"))

    target_points = erase_radius = targets = detection_radius = None
    if suite == "erasing":
        erasing = task["erasing"]
        if erasing.get("target_file"):
            target = load_grid_density(erasing["target_file"], space)
        else:
            target = target_density(erasing["target_shape"], space, erasing["grid_cells"], erasing["target_extent"])
        target_points = occupied_centers(target)
    elif suite == "q1":
        weights = np.full(task["q1"]["n_components"], 1.0)
        target = randomized_mixture(space, weights, rng, tuple(search["covariance_scale"]), search["mean_region"])
    else:
        target = randomized_mixture(
            space, search["mixture_weights"], rng, tuple(search["covariance_scale"]), search["mean_region"]
        )
    phi = target_coefficients(basis, target, config.get("basis.quadrature_cells"))

    model = _sensor(config, platform, rng, space)
    if suite == "erasing":
        erase_radius = task["erasing"].get("erase_radius") or 0.5 * sample_spacing(model.body_points)
    elif suite in ("ground", "aerial"):
        targets = sample_gmm(target, search["n_targets"], rng)
        detection_radius = search["detection_radius_fraction"] * space.min_length

    platform_section = config.section("platforms")[platform]
    dyn = build_platform(platform, platform_section)
    low, high = space.inner_region(task["initial_region"])
    position = rng.uniform(low, high)
    heading = rng.uniform(-np.pi, np.pi)
    budget = task["budgets"][suite]
    max_steps = budget if suite == "q1" else int(np.floor(task["truncation_factor"] * budget))
    controller = ControllerConfig.from_section(config.section("controller"), platform_section["dt"])
    _logger.info(f"Scenario {suite} seed {seed} on {platform}: start {position}, heading {heading:.3f}")
    return Scenario(
        suite=suite,
        seed=seed,
        space=space,
        basis=basis,
        target=target,
        phi=phi,
        dyn=dyn,
        model=model,
        controller=controller,
        initial_state=dyn.initial_state(position, heading),
        budget=budget,
        max_steps=max_steps,
        target_points=target_points,
        erase_radius=erase_radius,
        targets=targets,
        detection_radius=detection_radius,
    )
