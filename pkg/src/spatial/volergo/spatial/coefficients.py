"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import csv
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from volergo.core import Log, QuadratureMassWarning

from .basis import BasisSet
from .distributions import TargetDistribution
from .exceptions import UnderResolvedQuadrature

_logger = Log.register_logger(__name__)


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """
    Fourier coefficients aligned with ``BasisSet.indices``.

    Used for the target coefficients as well as for the (volumetric) coefficients of a trajectory.

    Parameters
    ----------
    values: np.ndarray
        One finite value per mode
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise ValueError("Coefficient vector contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)


def target_coefficients(
    basis: BasisSet, q: TargetDistribution, quad_cells_per_dim: int = 256
) -> CoefficientVector:
    """
    Fourier coefficients of a target density by midpoint quadrature.

    The density is renormalized on the quadrature grid, so the constant mode always equals
    ``1 / h_0``. The cosine basis is separable, so the sum is carried out one axis at a time.

    Parameters
    ----------
    basis: BasisSet
        The basis
    q: TargetDistribution
        Target density
    quad_cells_per_dim: int
        Quadrature cells per dimension, at least twice the modes per dimension

    Returns
    -------
    CoefficientVector
        ``phi_k`` for every mode

    Raises
    ------
    UnderResolvedQuadrature
        If the grid is too coarse for the basis
    ValueError
        If the density has no mass on the grid
    """
    if quad_cells_per_dim < 2 * basis.modes_per_dim:
        _logger.error(f"{quad_cells_per_dim} quadrature cells for {basis.modes_per_dim} modes")
        raise UnderResolvedQuadrature(quad_cells_per_dim, basis.modes_per_dim)
    axes, cell = basis.space.grid_centers(quad_cells_per_dim)
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    density = np.asarray(q.density(grid), dtype=float)
    mass = float(density.sum() * cell)
    if not np.isfinite(mass) or mass <= 0:
        _logger.error(f"Target density has mass {mass} on the quadrature grid")
        raise ValueError("Target density has mass {} on the quadrature grid".format(mass))
    if abs(mass - 1.0) > 1e-2:
        message = f"Target density integrates to {mass:.6f} on a {quad_cells_per_dim}-cell grid; renormalizing"
        _logger.warning(message)
        warnings.warn(message, QuadratureMassWarning)

    moments = density * (cell / mass)
    modes = np.arange(basis.modes_per_dim)
    for centers, length in zip(axes, basis.space.lengths):
        table = np.cos(np.outer(centers, modes * (np.pi / length)))
        moments = np.tensordot(moments, table, axes=([0], [0]))
    return CoefficientVector(moments.reshape(-1) / basis.normalizers)


def reconstruct(
    basis: BasisSet, coefficients: CoefficientVector, cells_per_dim: int = 64
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluate the truncated series ``sum_k c_k f_k(x)`` on a regular grid.

    Parameters
    ----------
    basis: BasisSet
        The basis
    coefficients: CoefficientVector
        Coefficients aligned with the basis
    cells_per_dim: int
        Grid resolution

    Returns
    -------
    Tuple[np.ndarray, np.ndarray]
        ``(*cells, d)`` cell centers and ``(*cells,)`` reconstructed density
    """
    axes, _ = basis.space.grid_centers(cells_per_dim)
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    return grid, basis.evaluate(grid) @ np.asarray(coefficients.values)


def write_basis_table(path: str, basis: BasisSet, coefficients: Optional[CoefficientVector] = None) -> None:
    """
    Dump the basis as CSV with columns ``k1..kd, h, lambda, value``.

    Parameters
    ----------
    path: str
        Destination
    basis: BasisSet
        The basis
    coefficients: Optional[CoefficientVector]
        Values for the last column; left empty when omitted
    """
    with open(path, "w", newline="", encoding="UTF-8") as file:
        writer = csv.writer(file)
        writer.writerow([f"k{axis + 1}" for axis in range(basis.dims)] + ["h", "lambda", "value"])
        for row, index in enumerate(basis.indices):
            value = "" if coefficients is None else repr(float(coefficients.values[row]))
            writer.writerow(
                [int(k) for k in index] + [repr(float(basis.normalizers[row])), repr(float(basis.weights[row])), value]
            )


def write_grid_csv(path: str, values: np.ndarray) -> None:
    """
    Write a 2-D grid as a CSV matrix, one row per ``y`` cell starting at the origin.

    Parameters
    ----------
    path: str
        Destination
    values: np.ndarray
        ``(n_x, n_y)`` grid
    """
    np.savetxt(path, np.asarray(values).T, delimiter=",", fmt="%.17g")
