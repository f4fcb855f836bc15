"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from abc import ABC, abstractmethod

import numpy as np
from scipy.spatial import cKDTree


class TaskProgress(ABC):
    """Completion state of a task, advanced with the footprint of every executed state."""

    @abstractmethod
    def update(self, footprint: np.ndarray) -> bool:
        """
        Account for one footprint.

        Parameters
        ----------
        footprint: np.ndarray
            ``(N, d)`` sample points of the executed state

        Returns
        -------
        bool
            Whether the task is complete
        """

    @property
    @abstractmethod
    def fraction(self) -> float:
        """Completed share of the task in ``[0, 1]``."""

    @property
    def complete(self) -> bool:
        # noqa: D102
        return self.fraction >= 1.0


class ErasingProgress(TaskProgress):
    """
    Target points are erased once any footprint sample comes within ``erase_radius``.

    Parameters
    ----------
    target_points: np.ndarray
        ``(P, 2)`` points to erase, ``P >= 1``
    erase_radius: float
        Erase distance in meters
    """

    def __init__(self, target_points: np.ndarray, erase_radius: float):
        target_points = np.asarray(target_points, dtype=float)
        if target_points.shape[0] == 0:
            raise ValueError("Erasing needs at least one target point")
        if erase_radius <= 0:
            raise ValueError("Erase radius must be positive, got {}".format(erase_radius))
        self.target_points = target_points
        self.erase_radius = float(erase_radius)
        self.erased = np.zeros(target_points.shape[0], dtype=bool)
        self._tree = cKDTree(target_points)

    def update(self, footprint: np.ndarray) -> bool:
        # noqa: D102
        hits = self._tree.query_ball_point(np.asarray(footprint, dtype=float), self.erase_radius)
        for indices in hits:
            self.erased[indices] = True
        return self.complete

    @property
    def fraction(self) -> float:
        # noqa: D102
        return float(np.mean(self.erased))


class SearchProgress(TaskProgress):
    """
    Hidden targets are found once any footprint sample comes within ``detection_radius``.

    Parameters
    ----------
    targets: np.ndarray
        ``(n, d)`` target positions
    detection_radius: float
        Detection distance in meters
    """

    def __init__(self, targets: np.ndarray, detection_radius: float):
        targets = np.asarray(targets, dtype=float)
        if targets.shape[0] == 0:
            raise ValueError("Search needs at least one target")
        if detection_radius <= 0:
            raise ValueError("Detection radius must be positive, got {}".format(detection_radius))
        self.targets = targets
        self.detection_radius = float(detection_radius)
        self.found = np.zeros(targets.shape[0], dtype=bool)

    def update(self, footprint: np.ndarray) -> bool:
        # noqa: D102
        distance, _ = cKDTree(np.asarray(footprint, dtype=float)).query(
            self.targets, distance_upper_bound=self.detection_radius
        )
        self.found |= distance <= self.detection_radius
        return self.complete

    @property
    def fraction(self) -> float:
        # noqa: D102
        return float(np.mean(self.found))


class MetricOnlyProgress(TaskProgress):
    """No completion criterion; trials run their full budget."""

    def update(self, footprint: np.ndarray) -> bool:
        # noqa: D102
        return False

    @property
    def fraction(self) -> float:
        # noqa: D102
        return 0.0
