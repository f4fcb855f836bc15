"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""


class InvalidControllerConfig(Exception):
    """
    Raised for a controller setting outside its valid range.

    Parameters
    ----------
    field: str
        Name of the setting
    reason: str
        What is wrong with it
    """

    def __init__(self, field: str, reason: str):
        self.field = field
        super().__init__("Invalid controller setting '{}': {}".format(field, reason))


class RolloutDiverged(Exception):
    """
    Raised when not even the nominal control tape can be rolled out from the current state.

    Parameters
    ----------
    step: int
        Executed steps before the failure
    """

    def __init__(self, step: int):
        super().__init__("No finite rollout exists from the state reached after {} steps".format(step))
