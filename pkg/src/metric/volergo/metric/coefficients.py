"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import numpy as np
from volergo.dynamics import DynamicsModel
from volergo.spatial import BasisSet, CoefficientVector
from volergo.volumetric import VolumetricModel, basis_values

from .exceptions import EmptyTrajectory


def compensated_sum(rows: np.ndarray) -> np.ndarray:
    """
    Sum along the first axis with Neumaier compensation, vectorized over the other axes.

    The reduction order is fixed (first row to last), so results are reproducible bit for bit.

    Parameters
    ----------
    rows: np.ndarray
        ``(T, ...)`` terms

    Returns
    -------
    np.ndarray
        ``(...)`` sums
    """
    rows = np.asarray(rows, dtype=float)
    total = np.zeros(rows.shape[1:])
    carry = np.zeros(rows.shape[1:])
    for row in rows:
        updated = total + row
        carry += np.where(np.abs(total) >= np.abs(row), (total - updated) + row, (row - updated) + total)
        total = updated
    return total + carry


def compensated_mean(rows: np.ndarray) -> np.ndarray:
    """
    Mean along the first axis using ``compensated_sum``.

    Parameters
    ----------
    rows: np.ndarray
        ``(T, ...)`` terms, ``T >= 1``

    Returns
    -------
    np.ndarray
        ``(...)`` means
    """
    rows = np.asarray(rows, dtype=float)
    return compensated_sum(rows) / rows.shape[0]


def as_state_array(states: np.ndarray, dyn: DynamicsModel) -> np.ndarray:
    """
    View a non-empty state sequence as a ``(T, n)`` array.

    Parameters
    ----------
    states: np.ndarray
        States of any leading shape
    dyn: DynamicsModel
        Platform

    Returns
    -------
    np.ndarray
        ``(T, n)`` states

    Raises
    ------
    EmptyTrajectory
        If there are no states
    """
    states = np.asarray(states, dtype=float)
    if states.size == 0:
        raise EmptyTrajectory()
    return states.reshape(-1, dyn.n_states)


def trajectory_coefficients(
    basis: BasisSet, model: VolumetricModel, dyn: DynamicsModel, states: np.ndarray, dt: float
) -> CoefficientVector:
    """
    Volumetric Fourier coefficients of a trajectory.

    With equally spaced states the time average ``(1/T) sum_t f_k^v(s_t) dt`` reduces to the
    mean of ``f_k^v`` over the states, so ``dt`` only has to be positive.

    Parameters
    ----------
    basis: BasisSet
        The basis
    model: VolumetricModel
        Footprint model
    dyn: DynamicsModel
        Platform
    states: np.ndarray
        ``(T, n)`` states
    dt: float
        Sampling period

    Returns
    -------
    CoefficientVector
        ``c_k^v`` for every mode
    """
    if dt <= 0:
        raise ValueError("dt must be positive, got {}".format(dt))
    states = as_state_array(states, dyn)
    return CoefficientVector(compensated_mean(basis_values(basis, model, dyn, states)))


def standard_coefficients(basis: BasisSet, dyn: DynamicsModel, states: np.ndarray, dt: float) -> CoefficientVector:
    """
    Fourier coefficients of the trajectory of the robot position alone.

    Parameters
    ----------
    basis: BasisSet
        The basis
    dyn: DynamicsModel
        Platform
    states: np.ndarray
        ``(T, n)`` states
    dt: float
        Sampling period

    Returns
    -------
    CoefficientVector
        ``c_k`` for every mode
    """
    if dt <= 0:
        raise ValueError("dt must be positive, got {}".format(dt))
    states = as_state_array(states, dyn)
    return CoefficientVector(compensated_mean(basis.evaluate(dyn.position(states))))


def compose_coefficients(
    first: CoefficientVector, first_duration: float, second: CoefficientVector, second_duration: float
) -> CoefficientVector:
    """
    Coefficients of two concatenated trajectories from the coefficients of each part.

    Parameters
    ----------
    first: CoefficientVector
        Coefficients of the earlier part
    first_duration: float
        Its duration
    second: CoefficientVector
        Coefficients of the later part
    second_duration: float
        Its duration

    Returns
    -------
    CoefficientVector
        Duration-weighted average
    """
    total = first_duration + second_duration
    return CoefficientVector((first_duration * first.values + second_duration * second.values) / total)
