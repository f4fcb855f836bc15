"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import itertools
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from .exceptions import IndexNotInBasis, InvalidBasisSize
from .space import SearchSpace

# rows evaluated per block; fixed so equal inputs always take the same code path
CHUNK_ROWS = 4096


@dataclass(frozen=True, eq=False)
class BasisSet:
    """
    Truncated, normalized cosine basis over a search space.

    ``f_k(x) = (1 / h_k) * prod_i cos(k_i * pi * x_i / L_i)`` for every index ``k`` with
    components below ``modes_per_dim``. Indices are ordered lexicographically with the
    constant mode first, and every per-mode array is aligned with that order.

    Points outside the search space are clamped onto its boundary before evaluation.

    Parameters
    ----------
    space: SearchSpace
        The domain
    modes_per_dim: int
        Number of cosine modes per dimension
    indices: np.ndarray
        ``(K, d)`` integer mode indices
    normalizers: np.ndarray
        ``h_k`` per mode
    weights: np.ndarray
        Sobolev weights ``lambda_k`` per mode
    """

    space: SearchSpace
    modes_per_dim: int
    indices: np.ndarray
    normalizers: np.ndarray
    weights: np.ndarray
    frequencies: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "frequencies", self.indices * (np.pi / self.space.upper))
        for array in (self.indices, self.normalizers, self.weights, self.frequencies):
            array.setflags(write=False)

    def __len__(self) -> int:
        return self.indices.shape[0]

    @property
    def dims(self) -> int:
        # noqa: D102
        return self.space.dims

    def position(self, k: Sequence[int]) -> int:
        """
        Locate a mode index in the basis ordering.

        Parameters
        ----------
        k: Sequence[int]
            Mode index with one entry per dimension

        Returns
        -------
        int
            Row of ``k`` in ``indices``

        Raises
        ------
        IndexNotInBasis
            If ``k`` has the wrong length or a component outside ``[0, modes_per_dim)``
        """
        k = tuple(k)
        if len(k) != self.dims or not all(
            isinstance(value, (int, np.integer)) and 0 <= value < self.modes_per_dim for value in k
        ):
            raise IndexNotInBasis(k)
        row = 0
        for value in k:
            row = row * self.modes_per_dim + int(value)
        return row

    def _blocks(self, points: np.ndarray) -> Tuple[np.ndarray, tuple]:
        points = np.asarray(points, dtype=float)
        lead = points.shape[:-1]
        flat = np.ascontiguousarray(self.space.clamp(points).reshape(-1, self.dims))
        return flat, lead

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate every basis function at every point.

        Parameters
        ----------
        points: np.ndarray
            ``(..., d)`` positions

        Returns
        -------
        np.ndarray
            ``(..., K)`` values
        """
        flat, lead = self._blocks(points)
        out = np.empty((flat.shape[0], len(self)))
        for start in range(0, flat.shape[0], CHUNK_ROWS):
            block = flat[start : start + CHUNK_ROWS]
            out[start : start + CHUNK_ROWS] = np.prod(np.cos(block[:, None, :] * self.frequencies), axis=-1)
        out /= self.normalizers
        return out.reshape(lead + (len(self),))

    def gradient(self, points: np.ndarray) -> np.ndarray:
        """
        Spatial gradients of every basis function at every point.

        Parameters
        ----------
        points: np.ndarray
            ``(..., d)`` positions

        Returns
        -------
        np.ndarray
            ``(..., K, d)`` gradients; the normal component vanishes on a clamped face
        """
        flat, lead = self._blocks(points)
        out = np.empty((flat.shape[0], len(self), self.dims))
        for start in range(0, flat.shape[0], CHUNK_ROWS):
            arg = flat[start : start + CHUNK_ROWS, None, :] * self.frequencies
            cos, sin = np.cos(arg), np.sin(arg)
            for axis in range(self.dims):
                others = np.prod(np.delete(cos, axis, axis=-1), axis=-1)
                out[start : start + CHUNK_ROWS, :, axis] = -self.frequencies[:, axis] * sin[..., axis] * others
        out /= self.normalizers[:, None]
        return out.reshape(lead + (len(self), self.dims))


def build_basis(space: SearchSpace, modes_per_dim: int) -> BasisSet:
    """
    Build the truncated basis with its normalizers and Sobolev weights.

    Parameters
    ----------
    space: SearchSpace
        The domain
    modes_per_dim: int
        Number of cosine modes per dimension

    Returns
    -------
    BasisSet
        ``modes_per_dim ** d`` modes

    Raises
    ------
    InvalidBasisSize
        If ``modes_per_dim`` is not a positive integer
    """
    if isinstance(modes_per_dim, bool) or not isinstance(modes_per_dim, (int, np.integer)) or modes_per_dim < 1:
        raise InvalidBasisSize(modes_per_dim)
    indices = np.array(list(itertools.product(range(int(modes_per_dim)), repeat=space.dims)), dtype=int)
    halves = np.where(indices == 0, space.upper, space.upper / 2.0)
    normalizers = np.sqrt(np.prod(halves, axis=1))
    weights = (1.0 + np.sum(indices**2, axis=1)) ** (-(space.dims + 1) / 2.0)
    return BasisSet(space, int(modes_per_dim), indices, normalizers, weights)


def eval_basis(basis: BasisSet, k: Sequence[int], x: Sequence[float]) -> float:
    """
    Evaluate a single basis function at a single point.

    Parameters
    ----------
    basis: BasisSet
        The basis
    k: Sequence[int]
        Mode index
    x: Sequence[float]
        Position

    Returns
    -------
    float
        ``f_k(x)``
    """
    row = basis.position(k)
    return float(basis.evaluate(np.asarray(x, dtype=float)[None, :])[0, row])


def eval_basis_grad(basis: BasisSet, k: Sequence[int], x: Sequence[float]) -> np.ndarray:
    """
    Spatial gradient of a single basis function at a single point.

    Parameters
    ----------
    basis: BasisSet
        The basis
    k: Sequence[int]
        Mode index
    x: Sequence[float]
        Position

    Returns
    -------
    np.ndarray
        ``(d,)`` gradient of ``f_k`` at ``x``
    """
    row = basis.position(k)
    return basis.gradient(np.asarray(x, dtype=float)[None, :])[0, row].copy()
