"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.stats import multivariate_normal

from .exceptions import DegenerateCovariance, InvalidMixtureWeights, RejectionBudgetExhausted
from .space import SearchSpace

MASS_CELLS = 256
MAX_REJECTIONS = 1000

SeedLike = Union[int, np.random.Generator, None]


class TargetDistribution(ABC):
    """Probability density over a search space, zero outside it and of unit mass inside."""

    space: SearchSpace

    @abstractmethod
    def density(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate the density.

        Parameters
        ----------
        points: np.ndarray
            ``(..., d)`` positions

        Returns
        -------
        np.ndarray
            Density over the leading axes
        """


@dataclass(frozen=True, eq=False)
class GaussianMixture(TargetDistribution):
    """
    Weighted sum of Gaussians truncated to the search space and renormalized.

    Parameters
    ----------
    space: SearchSpace
        Support of the truncated density
    weights: np.ndarray
        ``(J,)`` non-negative weights summing to one
    means: np.ndarray
        ``(J, d)`` component means
    covariances: np.ndarray
        ``(J, d, d)`` symmetric positive definite covariances
    """

    space: SearchSpace
    weights: np.ndarray
    means: np.ndarray
    covariances: np.ndarray
    cholesky_factors: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        means = np.asarray(self.means, dtype=float).reshape(weights.size, self.space.dims)
        covariances = np.asarray(self.covariances, dtype=float).reshape(
            weights.size, self.space.dims, self.space.dims
        )
        if weights.size == 0 or np.any(weights < 0) or not np.isclose(weights.sum(), 1.0, rtol=0, atol=1e-9):
            raise InvalidMixtureWeights(self.weights)
        factors = []
        for index, covariance in enumerate(covariances):
            if not np.allclose(covariance, covariance.T):
                raise DegenerateCovariance(index)
            try:
                factors.append(np.linalg.cholesky(covariance))
            except np.linalg.LinAlgError:
                raise DegenerateCovariance(index)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "covariances", covariances)
        object.__setattr__(self, "cholesky_factors", np.stack(factors))

    def raw_density(self, points: np.ndarray) -> np.ndarray:
        """
        Untruncated mixture density.

        Parameters
        ----------
        points: np.ndarray
            ``(..., d)`` positions

        Returns
        -------
        np.ndarray
            Density over the leading axes
        """
        points = np.asarray(points, dtype=float)
        flat = points.reshape(-1, self.space.dims)
        total = np.zeros(flat.shape[0])
        for weight, mean, covariance in zip(self.weights, self.means, self.covariances):
            total += weight * np.atleast_1d(multivariate_normal(mean, covariance).pdf(flat))
        return total.reshape(points.shape[:-1])

    @cached_property
    def mass(self) -> float:
        """
        Probability mass of the untruncated mixture inside the search space, by midpoint quadrature.

        Returns
        -------
        float
            Mass in (0, 1]
        """
        axes, cell = self.space.grid_centers(MASS_CELLS)
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return float(self.raw_density(grid).sum() * cell)

    def density(self, points: np.ndarray) -> np.ndarray:
        # noqa: D102
        return self.raw_density(points) / self.mass * self.space.contains(points)


@dataclass(frozen=True, eq=False)
class GridDensity(TargetDistribution):
    """
    Piecewise-constant density on a regular grid, renormalized to unit mass.

    Parameters
    ----------
    space: SearchSpace
        Domain covered by the grid
    values: np.ndarray
        Non-negative cell values; axis ``i`` runs along dimension ``i`` starting at the origin
    """

    space: SearchSpace
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != self.space.dims or np.any(~np.isfinite(values)) or np.any(values < 0):
            raise ValueError("Grid density needs finite non-negative values with one axis per dimension")
        total = values.sum() * self.cell_volume_of(values.shape)
        if total <= 0:
            raise ValueError("Grid density has no mass")
        normalized = values / total
        normalized.setflags(write=False)
        object.__setattr__(self, "values", normalized)

    def cell_volume_of(self, shape: Tuple[int, ...]) -> float:
        # noqa: D102
        return self.space.volume / float(np.prod(shape))

    @property
    def cell_volume(self) -> float:
        # noqa: D102
        return self.cell_volume_of(self.values.shape)

    def cell_centers(self) -> np.ndarray:
        """
        Centers of every cell.

        Returns
        -------
        np.ndarray
            ``(*cells, d)`` positions
        """
        axes = [(np.arange(n) + 0.5) * (length / n) for n, length in zip(self.values.shape, self.space.lengths)]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    def density(self, points: np.ndarray) -> np.ndarray:
        # noqa: D102
        points = np.asarray(points, dtype=float)
        shape = np.asarray(self.values.shape)
        cells = np.floor(points / self.space.upper * shape).astype(int)
        cells = np.clip(cells, 0, shape - 1)
        found = self.values[tuple(np.moveaxis(cells, -1, 0))]
        return found * self.space.contains(points)


def sample_gmm(q: GaussianMixture, n: int, seed: SeedLike = None) -> np.ndarray:
    """
    Draw points from a mixture, resampling any draw that lands outside the search space.

    Parameters
    ----------
    q: GaussianMixture
        The mixture
    n: int
        Number of points
    seed: SeedLike
        Seed or generator; equal seeds give equal points

    Returns
    -------
    np.ndarray
        ``(n, d)`` points inside the search space

    Raises
    ------
    ValueError
        If ``n`` is not positive
    RejectionBudgetExhausted
        If some point is rejected more than ``MAX_REJECTIONS`` times
    """
    if n < 1:
        raise ValueError("sample_gmm needs n >= 1, got {}".format(n))
    rng = np.random.default_rng(seed)
    components = rng.choice(q.weights.size, size=n, p=q.weights)
    points = np.empty((n, q.space.dims))
    rejections = np.zeros(n, dtype=int)
    pending = np.arange(n)
    while pending.size:
        chosen = components[pending]
        noise = rng.standard_normal((pending.size, q.space.dims))
        draws = q.means[chosen] + np.einsum("pij,pj->pi", q.cholesky_factors[chosen], noise)
        inside = q.space.contains(draws)
        points[pending[inside]] = draws[inside]
        pending = pending[~inside]
        rejections[pending] += 1
        if np.any(rejections[pending] > MAX_REJECTIONS):
            raise RejectionBudgetExhausted(MAX_REJECTIONS)
    return points


def random_rotation(dims: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw a rotation matrix.

    Parameters
    ----------
    dims: int
        2 or 3
    rng: np.random.Generator
        Source of randomness

    Returns
    -------
    np.ndarray
        ``(dims, dims)`` proper rotation
    """
    if dims == 2:
        angle = rng.uniform(0.0, np.pi)
        return np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    q, r = np.linalg.qr(rng.standard_normal((dims, dims)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def randomized_mixture(
    space: SearchSpace,
    weights: Sequence[float],
    rng: np.random.Generator,
    eigen_range: Tuple[float, float] = (0.005, 0.02),
    mean_region: float = 0.8,
) -> GaussianMixture:
    """
    Mixture with fixed weights, uniform means and randomly rotated covariances.

    Parameters
    ----------
    space: SearchSpace
        Domain
    weights: Sequence[float]
        Component weights, normalized here
    rng: np.random.Generator
        Source of randomness
    eigen_range: Tuple[float, float]
        Covariance eigenvalue range as fractions of ``min(L_i) ** 2``
    mean_region: float
        Centered share of the space where means are drawn

    Returns
    -------
    GaussianMixture
        The drawn mixture
    """
    weights = np.asarray(weights, dtype=float)
    weights = weights / weights.sum()
    low, high = space.inner_region(mean_region)
    means = rng.uniform(low, high, size=(weights.size, space.dims))
    scale = space.min_length**2
    covariances = []
    for _ in range(weights.size):
        eigen = rng.uniform(eigen_range[0], eigen_range[1], size=space.dims) * scale
        rotation = random_rotation(space.dims, rng)
        covariance = rotation @ np.diag(eigen) @ rotation.T
        covariances.append(0.5 * (covariance + covariance.T))
    return GaussianMixture(space, weights, means, np.stack(covariances))
