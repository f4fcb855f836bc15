"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import os

import cv2
import numpy as np

from .distributions import GridDensity
from .exceptions import GridFileUnreadable
from .space import SearchSpace


def read_pgm(path: str) -> np.ndarray:
    """
    Read a portable graymap, ASCII (P2) or binary (P5).

    The bytes are read in Python and decoded by OpenCV, 8-bit and 16-bit rasters alike.

    Parameters
    ----------
    path: str
        The file

    Returns
    -------
    np.ndarray
        ``(rows, columns)`` gray levels as floats, first row first

    Raises
    ------
    ValueError
        If OpenCV cannot decode the file as a single-channel image
    """
    with open(path, "rb") as file:
        raw = np.frombuffer(file.read(), dtype=np.uint8)
    image = cv2.imdecode(raw, cv2.IMREAD_UNCHANGED) if raw.size else None
    if image is None or image.ndim != 2:
        raise ValueError("not a single-channel graymap")
    return image.astype(float)


def load_grid_density(path: str, space: SearchSpace) -> GridDensity:
    """
    Read a density grid from a PGM image or a CSV matrix.

    Rows run along ``y`` and columns along ``x``; the first row touches the origin. Values only
    need to be proportional to the density.

    Parameters
    ----------
    path: str
        A ``.pgm`` or ``.csv`` file
    space: SearchSpace
        2-D domain the grid covers

    Returns
    -------
    GridDensity
        The normalized density

    Raises
    ------
    GridFileUnreadable
        If the file is missing, malformed, or the space is not 2-D
    """
    if space.dims != 2:
        raise GridFileUnreadable(path, "grid files describe 2-D densities only")
    if not os.path.isfile(path):
        raise GridFileUnreadable(path, "no such file")
    try:
        if path.lower().endswith(".pgm"):
            matrix = read_pgm(path)
        else:
            matrix = np.atleast_2d(np.loadtxt(path, delimiter=",", dtype=float))
        return GridDensity(space, matrix.T)
    except (ValueError, OSError, cv2.error) as exc:
        raise GridFileUnreadable(path, str(exc)) from exc
