"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .exceptions import InvalidSearchSpace


@dataclass(frozen=True)
class SearchSpace:
    """
    Box ``[0, L_1] x ... x [0, L_d]`` in which coverage is measured.

    Parameters
    ----------
    lengths: Sequence[float]
        Side lengths in meters; two or three strictly positive finite values
    """

    lengths: Tuple[float, ...]

    def __post_init__(self):
        try:
            lengths = tuple(float(value) for value in self.lengths)
        except (TypeError, ValueError):
            raise InvalidSearchSpace(self.lengths)
        if len(lengths) not in (2, 3) or not all(np.isfinite(value) and value > 0 for value in lengths):
            raise InvalidSearchSpace(self.lengths)
        object.__setattr__(self, "lengths", lengths)

    @property
    def dims(self) -> int:
        # noqa: D102
        return len(self.lengths)

    @property
    def upper(self) -> np.ndarray:
        # noqa: D102
        return np.asarray(self.lengths, dtype=float)

    @property
    def volume(self) -> float:
        # noqa: D102
        return float(np.prod(self.lengths))

    @property
    def min_length(self) -> float:
        # noqa: D102
        return min(self.lengths)

    def clamp(self, points: np.ndarray) -> np.ndarray:
        """
        Clamp points component-wise into the box.

        Parameters
        ----------
        points: np.ndarray
            Array whose last axis has ``dims`` entries

        Returns
        -------
        np.ndarray
            Clamped copy
        """
        return np.clip(points, 0.0, self.upper)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """
        Test which points lie inside the closed box.

        Parameters
        ----------
        points: np.ndarray
            Array whose last axis has ``dims`` entries

        Returns
        -------
        np.ndarray
            Boolean mask over the leading axes
        """
        points = np.asarray(points, dtype=float)
        return np.all((points >= 0.0) & (points <= self.upper), axis=-1)

    def inner_region(self, fraction: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Centered sub-box covering ``fraction`` of every side.

        Parameters
        ----------
        fraction: float
            Share of each side length, in (0, 1]

        Returns
        -------
        Tuple[np.ndarray, np.ndarray]
            Lower and upper corners
        """
        margin = 0.5 * (1.0 - fraction) * self.upper
        return margin, self.upper - margin

    def grid_centers(self, cells_per_dim: int) -> Tuple[Sequence[np.ndarray], float]:
        """
        Midpoints of a regular grid.

        Parameters
        ----------
        cells_per_dim: int
            Cells along every axis

        Returns
        -------
        Tuple[Sequence[np.ndarray], float]
            One array of cell centers per axis, and the cell volume
        """
        axes = [(np.arange(cells_per_dim) + 0.5) * (length / cells_per_dim) for length in self.lengths]
        return axes, self.volume / cells_per_dim**self.dims
