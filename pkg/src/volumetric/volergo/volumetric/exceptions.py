"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""


class CameraBelowGround(Exception):
    """
    Raised when the camera is at or below the ground plane.

    Parameters
    ----------
    altitude: float
        The offending altitude in meters
    """

    def __init__(self, altitude: float):
        super().__init__("Camera altitude must be above the ground plane, got {}".format(altitude))


class NonFiniteState(Exception):
    """Raised when a footprint is requested for a state containing NaN or infinity."""

    def __init__(self):
        super().__init__("Cannot place a footprint for a non-finite state")


class UnsupportedPose(Exception):
    """
    Raised when a platform does not expose the pose components a footprint model needs.

    Parameters
    ----------
    variant: str
        Footprint model
    platform: str
        Platform name
    """

    def __init__(self, variant: str, platform: str):
        super().__init__("The {} footprint cannot be placed by the {} platform".format(variant, platform))


class InvalidModelParameter(Exception):
    """
    Raised for an out-of-range footprint parameter.

    Parameters
    ----------
    name: str
        Parameter name
    value: object
        Given value
    """

    def __init__(self, name: str, value):
        super().__init__("Invalid footprint parameter {}={}".format(name, value))
