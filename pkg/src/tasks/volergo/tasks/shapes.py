"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from typing import Callable, Dict

import numpy as np
from volergo.spatial import GridDensity, SearchSpace

from .exceptions import UnknownShape

# Shapes are boolean masks over the square u, v in [-1, 1].
Mask = Callable[[np.ndarray, np.ndarray], np.ndarray]

# refinement steps of the sample-spacing search
SPACING_ITERATIONS = 40


def _polar(u: np.ndarray, v: np.ndarray):
    return np.hypot(u, v), np.arctan2(v, u)


def _disc(u, v):
    return u * u + v * v <= 1.0


def _bar(u, v):
    return np.abs(v) <= 0.25


def _l_shape(u, v):
    return (u <= -0.35) | (v <= -0.35)


def _star(u, v):
    radius, angle = _polar(u, v)
    return radius <= 0.6 + 0.4 * np.cos(5.0 * (angle - np.pi / 2.0))


def _cross(u, v):
    return (np.abs(u) <= 0.3) | (np.abs(v) <= 0.3)


def _trophy(u, v):
    cup = (v >= -0.1) & (np.abs(u) <= 0.3 + 0.5 * (v + 0.1))
    stem = (v >= -0.7) & (v < -0.1) & (np.abs(u) <= 0.12)
    base = (v < -0.7) & (np.abs(u) <= 0.6)
    return cup | stem | base


def _heart(u, v):
    x, y = 1.14 * u, 1.125 * v + 0.125
    return (x * x + y * y - 1.0) ** 3 - x * x * y**3 <= 0.0


def _ring(u, v):
    radius = np.hypot(u, v)
    return (radius <= 1.0) & (radius >= 0.55)


def _lock(u, v):
    body = (np.abs(u) <= 0.75) & (v <= 0.15)
    keyhole = np.hypot(u, v + 0.35) <= 0.15
    arc = np.hypot(u, v - 0.15)
    shackle = (v > 0.15) & (arc >= 0.35) & (arc <= 0.6)
    return (body & ~keyhole) | shackle


TOOL_SHAPES: Dict[str, Mask] = {
    "disc": _disc,
    "bar": _bar,
    "l_shape": _l_shape,
    "star": _star,
    "cross": _cross,
    "trophy": _trophy,
}

TARGET_SHAPES: Dict[str, Mask] = {
    "heart": _heart,
    "ring": _ring,
    "l_shape": _l_shape,
    "star": _star,
    "cross": _cross,
    "lock": _lock,
}


def _inside(mask: Mask, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return mask(u, v) & (np.abs(u) <= 1.0) & (np.abs(v) <= 1.0)


def _lattice(mask: Mask, spacing: float) -> np.ndarray:
    # lattice points of the given spacing (in mask units) centered on the origin
    half = np.floor(1.0 / spacing)
    ticks = np.arange(-half, half + 1.0) * spacing
    u, v = np.meshgrid(ticks, ticks, indexing="ij")
    keep = _inside(mask, u, v)
    return np.stack([u[keep], v[keep]], axis=-1)


def tool_points(name: str, size: float, n_samples: int, rng: np.random.Generator) -> np.ndarray:
    """
    Body-frame point cloud of a procedural tool, controlled from a random pivot.

    The mask is filled with a square lattice whose spacing is searched so that the
    cloud has as close to ``n_samples`` points as possible. The pivot is drawn uniformly
    over the tool's bounding box and becomes the body origin.

    Parameters
    ----------
    name: str
        One of ``TOOL_SHAPES``
    size: float
        Width of the tool's bounding box in meters
    n_samples: int
        Desired number of samples
    rng: np.random.Generator
        Source of the pivot

    Returns
    -------
    np.ndarray
        ``(N, 2)`` points relative to the pivot

    Raises
    ------
    UnknownShape
        If the tool is not bundled
    """
    if name not in TOOL_SHAPES:
        raise UnknownShape(name)
    mask = TOOL_SHAPES[name]
    low, high = 1e-4, 2.0
    best = _lattice(mask, 1.0)
    for _ in range(SPACING_ITERATIONS):
        middle = np.sqrt(low * high)
        cloud = _lattice(mask, middle)
        if abs(cloud.shape[0] - n_samples) < abs(best.shape[0] - n_samples):
            best = cloud
        if cloud.shape[0] > n_samples:
            low = middle
        else:
            high = middle
    half = size / 2.0
    pivot = rng.uniform(-half, half, size=2)
    return best * half - pivot


def mask_grid(name: str, cells: int, extent: float) -> np.ndarray:
    """
    Rasterize a target shape on a ``cells x cells`` grid over the unit square.

    Parameters
    ----------
    name: str
        One of ``TARGET_SHAPES``
    cells: int
        Cells per dimension
    extent: float
        Fraction of the square covered by the shape's bounding box

    Returns
    -------
    np.ndarray
        Boolean mask; axis 0 runs along x and axis 1 along y

    Raises
    ------
    UnknownShape
        If the target is not bundled
    """
    if name not in TARGET_SHAPES:
        raise UnknownShape(name)
    centers = (np.arange(cells) + 0.5) / cells
    u, v = np.meshgrid((2.0 * centers - 1.0) / extent, (2.0 * centers - 1.0) / extent, indexing="ij")
    return _inside(TARGET_SHAPES[name], u, v)


def target_density(name: str, space: SearchSpace, cells: int, extent: float) -> GridDensity:
    """
    Uniform density over a rasterized target shape.

    Parameters
    ----------
    name: str
        One of ``TARGET_SHAPES``
    space: SearchSpace
        Planar search space
    cells: int
        Cells per dimension
    extent: float
        Fraction of the space covered by the shape's bounding box

    Returns
    -------
    GridDensity
        The normalized mask
    """
    return GridDensity(space, mask_grid(name, cells, extent).astype(float))


def occupied_centers(density: GridDensity) -> np.ndarray:
    """
    Centers of the cells where a grid density is positive.

    Parameters
    ----------
    density: GridDensity
        The grid

    Returns
    -------
    np.ndarray
        ``(P, d)`` points
    """
    return density.cell_centers()[density.values > 0]
