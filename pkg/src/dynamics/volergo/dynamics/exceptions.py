"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""


class NonFiniteInput(Exception):
    """
    Raised when a state or control handed to the dynamics contains NaN or infinity.

    Parameters
    ----------
    what: str
        Which argument was non-finite
    """

    def __init__(self, what: str):
        super().__init__("Non-finite {} passed to the dynamics".format(what))


class IntegrationBlowUp(Exception):
    """
    Raised when an RK4 step produces a non-finite state.

    Reduce the time step or the control bounds.

    Parameters
    ----------
    dt: float
        The time step that blew up
    """

    def __init__(self, dt: float):
        super().__init__("RK4 step with dt={} produced a non-finite state".format(dt))


class GimbalLock(Exception):
    """
    Raised when the quadcopter pitch reaches the Euler-angle singularity.

    Parameters
    ----------
    pitch: float
        The offending pitch in radians
    """

    def __init__(self, pitch: float):
        super().__init__("Quadcopter pitch {:.6f} rad is at the Euler-angle singularity".format(pitch))


class InvalidTimeStep(Exception):
    """
    Raised for a non-positive or non-finite time step.

    Parameters
    ----------
    dt: float
        The given step
    """

    def __init__(self, dt: float):
        super().__init__("Time step must be positive and finite, got {}".format(dt))


class LayoutMismatch(Exception):
    """
    Raised when a vector does not have the platform's state or control length.

    Parameters
    ----------
    expected: int
        Length the platform uses
    received: int
        Length that was passed
    """

    def __init__(self, expected: int, received: int):
        super().__init__("Expected a vector of length {}, received {}".format(expected, received))
