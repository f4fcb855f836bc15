"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

from typing import Union

import numpy as np
from volergo.dynamics import DynamicsModel
from volergo.spatial import BasisSet, CoefficientVector
from volergo.volumetric import VolumetricModel, basis_values, basis_values_and_gradients

from .coefficients import as_state_array, compensated_mean
from .exceptions import CoefficientLengthMismatch, HorizonOutOfRange

Coefficients = Union[CoefficientVector, np.ndarray]


def ergodic_metric(c: Coefficients, phi: Coefficients, weights: np.ndarray) -> float:
    """
    Sobolev-weighted distance between trajectory and target coefficients.

    Parameters
    ----------
    c: Coefficients
        Trajectory coefficients
    phi: Coefficients
        Target coefficients
    weights: np.ndarray
        ``lambda_k`` per mode

    Returns
    -------
    float
        ``sum_k lambda_k (c_k - phi_k)^2``
    """
    c, phi, weights = np.asarray(c, dtype=float), np.asarray(phi, dtype=float), np.asarray(weights, dtype=float)
    if c.shape != phi.shape:
        raise CoefficientLengthMismatch(c.size, phi.size)
    if weights.shape != c.shape:
        raise CoefficientLengthMismatch(c.size, weights.size)
    difference = c - phi
    return float(np.sum(weights * difference * difference))


def metric_gradient_from(
    values: np.ndarray, horizon_gradients: np.ndarray, phi: Coefficients, weights: np.ndarray
) -> np.ndarray:
    """
    Chain rule from per-state basis values and gradients to ``dE/ds_t``.

    Parameters
    ----------
    values: np.ndarray
        ``(T, K)`` basis values of every state
    horizon_gradients: np.ndarray
        ``(H, K, n)`` basis gradients of the optimizable states
    phi: Coefficients
        Target coefficients
    weights: np.ndarray
        ``lambda_k`` per mode

    Returns
    -------
    np.ndarray
        ``(H, n)`` gradients
    """
    phi = np.asarray(phi, dtype=float)
    residual = np.asarray(weights) * (compensated_mean(values) - phi)
    return (2.0 / values.shape[0]) * np.einsum("k,hkn->hn", residual, horizon_gradients)


def metric_state_gradient(
    basis: BasisSet,
    model: VolumetricModel,
    dyn: DynamicsModel,
    states: np.ndarray,
    dt: float,
    phi: Coefficients,
    horizon_start: int,
) -> np.ndarray:
    """
    Gradient of the volumetric ergodic metric with respect to the optimizable states.

    Every state contributes to the coefficients; only states from ``horizon_start`` on
    receive a gradient. Since the states are equally weighted the gradient does not depend on ``dt``.

    Parameters
    ----------
    basis: BasisSet
        The basis
    model: VolumetricModel
        Footprint model
    dyn: DynamicsModel
        Platform
    states: np.ndarray
        ``(T, n)`` past states followed by horizon states
    dt: float
        Sampling period
    phi: Coefficients
        Target coefficients
    horizon_start: int
        Index of the first optimizable state

    Returns
    -------
    np.ndarray
        ``(T - horizon_start, n)`` gradients
    """
    if dt <= 0:
        raise ValueError("dt must be positive, got {}".format(dt))
    states = as_state_array(states, dyn)
    if not 0 <= horizon_start < states.shape[0]:
        raise HorizonOutOfRange(horizon_start, states.shape[0])
    past = basis_values(basis, model, dyn, states[:horizon_start])
    horizon_values, horizon_gradients = basis_values_and_gradients(basis, model, dyn, states[horizon_start:])
    values = np.concatenate([past, horizon_values])
    return metric_gradient_from(values, horizon_gradients, phi, basis.weights)


def standard_metric_state_gradient(
    basis: BasisSet, dyn: DynamicsModel, states: np.ndarray, dt: float, phi: Coefficients, horizon_start: int
) -> np.ndarray:
    """
    Gradient of the standard (position-only) ergodic metric with respect to the optimizable states.

    Parameters
    ----------
    basis: BasisSet
        The basis
    dyn: DynamicsModel
        Platform
    states: np.ndarray
        ``(T, n)`` past states followed by horizon states
    dt: float
        Sampling period
    phi: Coefficients
        Target coefficients
    horizon_start: int
        Index of the first optimizable state

    Returns
    -------
    np.ndarray
        ``(T - horizon_start, n)`` gradients
    """
    if dt <= 0:
        raise ValueError("dt must be positive, got {}".format(dt))
    states = as_state_array(states, dyn)
    if not 0 <= horizon_start < states.shape[0]:
        raise HorizonOutOfRange(horizon_start, states.shape[0])
    positions = dyn.position(states)
    values = basis.evaluate(positions)
    gradients = np.matmul(basis.gradient(positions[horizon_start:]), dyn.position_selector())
    return metric_gradient_from(values, gradients, phi, basis.weights)
