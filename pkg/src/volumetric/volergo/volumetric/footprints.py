"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import csv
import os

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .exceptions import InvalidModelParameter


def load_body_points(path: str) -> np.ndarray:
    """
    Read a tool point cloud: one ``x, y`` row per sample, body frame, meters.

    A header row is skipped when present.

    Parameters
    ----------
    path: str
        CSV file

    Returns
    -------
    np.ndarray
        ``(N, 2)`` points
    """
    if not os.path.isfile(path):
        raise InvalidModelParameter("tool_file", path)
    rows = []
    with open(path, newline="", encoding="UTF-8") as file:
        for record in csv.reader(file):
            if not record or record[0].strip().startswith("#"):
                continue
            try:
                rows.append([float(record[0]), float(record[1])])
            except (ValueError, IndexError):
                if rows:
                    raise InvalidModelParameter("tool_file", path)
    points = np.asarray(rows, dtype=float).reshape(-1, 2)
    if points.shape[0] == 0 or not np.all(np.isfinite(points)):
        raise InvalidModelParameter("tool_file", path)
    return points


def footprint_area(points: np.ndarray) -> float:
    """
    Area of the convex hull of a planar footprint.

    Parameters
    ----------
    points: np.ndarray
        ``(N, 2)`` samples

    Returns
    -------
    float
        Hull area; zero for fewer than three points or collinear samples
    """
    points = np.asarray(points, dtype=float)
    if points.shape[0] < 3:
        return 0.0
    try:
        return float(ConvexHull(points).volume)
    except QhullError:
        return 0.0


def write_footprint_csv(path: str, footprints: np.ndarray) -> None:
    """
    Dump footprints with columns ``state, sample, x, y``.

    Parameters
    ----------
    path: str
        Destination
    footprints: np.ndarray
        ``(T, N, 2)`` samples, or ``(N, 2)`` for a single state
    """
    footprints = np.asarray(footprints, dtype=float)
    if footprints.ndim == 2:
        footprints = footprints[None]
    with open(path, "w", newline="", encoding="UTF-8") as file:
        writer = csv.writer(file)
        writer.writerow(["state", "sample", "x", "y"])
        for state, samples in enumerate(footprints):
            for sample, (x, y) in enumerate(samples):
                writer.writerow([state, sample, repr(float(x)), repr(float(y))])
