"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""


class EmptyTrajectory(Exception):
    """Raised when coefficients are requested for a trajectory without states."""

    def __init__(self):
        super().__init__("A trajectory needs at least one state")


class CoefficientLengthMismatch(Exception):
    """
    Raised when coefficient vectors or weights are not aligned.

    Parameters
    ----------
    a: int
        Length of the first vector
    b: int
        Length of the second vector
    """

    def __init__(self, a: int, b: int):
        super().__init__("Coefficient vectors have different lengths: {} and {}".format(a, b))


class HorizonOutOfRange(Exception):
    """
    Raised when the first optimizable state index is not inside the trajectory.

    Parameters
    ----------
    start: int
        Requested first horizon index
    count: int
        Number of states
    """

    def __init__(self, start: int, count: int):
        super().__init__("Horizon start {} is outside a trajectory of {} states".format(start, count))
