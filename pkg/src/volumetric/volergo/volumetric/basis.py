"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from typing import Sequence, Tuple

import numpy as np
from volergo.dynamics import DynamicsModel
from volergo.spatial import BasisSet

from .models import VolumetricModel

# sample points handled per block; a multiple of the basis block size
CHUNK_POINTS = 16384


def _state_blocks(n_states: int, n_samples: int):
    size = max(1, CHUNK_POINTS // n_samples)
    for start in range(0, n_states, size):
        yield slice(start, min(start + size, n_states))


def basis_values(basis: BasisSet, model: VolumetricModel, dyn: DynamicsModel, states: np.ndarray) -> np.ndarray:
    """
    Volumetric basis values ``f_k^v(s) = mean_i f_k(h_i(s))`` for a batch of states.

    Parameters
    ----------
    basis: BasisSet
        The basis
    model: VolumetricModel
        Footprint model
    dyn: DynamicsModel
        Platform
    states: np.ndarray
        ``(..., n)`` states

    Returns
    -------
    np.ndarray
        ``(..., K)`` values
    """
    states = np.asarray(states, dtype=float)
    flat = states.reshape(-1, dyn.n_states)
    out = np.empty((flat.shape[0], len(basis)))
    for block in _state_blocks(flat.shape[0], model.n_samples):
        points = model.sample_points(flat[block], dyn)
        values = basis.evaluate(points.reshape(-1, points.shape[-1]))
        out[block] = values.reshape(points.shape[:-1] + (len(basis),)).mean(axis=1)
    return out.reshape(states.shape[:-1] + (len(basis),))


def basis_values_and_gradients(
    basis: BasisSet, model: VolumetricModel, dyn: DynamicsModel, states: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Volumetric basis values and their state gradients for a batch of states.

    ``d f_k^v / ds = mean_i grad f_k(h_i(s)) @ d h_i / ds``.

    Parameters
    ----------
    basis: BasisSet
        The basis
    model: VolumetricModel
        Footprint model
    dyn: DynamicsModel
        Platform
    states: np.ndarray
        ``(..., n)`` states

    Returns
    -------
    Tuple[np.ndarray, np.ndarray]
        ``(..., K)`` values and ``(..., K, n)`` gradients
    """
    states = np.asarray(states, dtype=float)
    flat = states.reshape(-1, dyn.n_states)
    n_modes, n_states = len(basis), dyn.n_states
    values = np.empty((flat.shape[0], n_modes))
    gradients = np.empty((flat.shape[0], n_modes, n_states))
    for block in _state_blocks(flat.shape[0], model.n_samples):
        points = model.sample_points(flat[block], dyn)
        jacobians = model.sample_jacobians(flat[block], dyn)
        count, n_samples, dims = points.shape
        rows = points.reshape(-1, dims)
        values[block] = basis.evaluate(rows).reshape(count, n_samples, n_modes).mean(axis=1)
        spatial = basis.gradient(rows).reshape(count, n_samples, n_modes, dims)
        stacked = spatial.transpose(0, 2, 1, 3).reshape(count, n_modes, n_samples * dims)
        gradients[block] = np.matmul(stacked, jacobians.reshape(count, n_samples * dims, n_states)) / n_samples
    lead = states.shape[:-1]
    return values.reshape(lead + (n_modes,)), gradients.reshape(lead + (n_modes, n_states))


def vol_basis(
    basis: BasisSet, model: VolumetricModel, dyn: DynamicsModel, k: Sequence[int], s: np.ndarray
) -> float:
    """
    Volumetric value of one basis function at one state.

    Parameters
    ----------
    basis: BasisSet
        The basis
    model: VolumetricModel
        Footprint model
    dyn: DynamicsModel
        Platform
    k: Sequence[int]
        Mode index
    s: np.ndarray
        ``(n,)`` state

    Returns
    -------
    float
        ``f_k^v(s)``
    """
    row = basis.position(k)
    return float(basis_values(basis, model, dyn, np.asarray(s, dtype=float)[None, :])[0, row])


def vol_basis_grad(
    basis: BasisSet, model: VolumetricModel, dyn: DynamicsModel, k: Sequence[int], s: np.ndarray
) -> np.ndarray:
    """
    State gradient of one volumetric basis function at one state.

    Parameters
    ----------
    basis: BasisSet
        The basis
    model: VolumetricModel
        Footprint model
    dyn: DynamicsModel
        Platform
    k: Sequence[int]
        Mode index
    s: np.ndarray
        ``(n,)`` state

    Returns
    -------
    np.ndarray
        ``(n,)`` gradient
    """
    row = basis.position(k)
    _, gradients = basis_values_and_gradients(basis, model, dyn, np.asarray(s, dtype=float)[None, :])
    return gradients[0, row].copy()
