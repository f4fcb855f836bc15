"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""


class UsageError(Exception):
    """
    Raised for malformed command-line arguments.

    Parameters
    ----------
    message: str
        Parser diagnostics
    """

    def __init__(self, message: str):
        super().__init__("Usage error: {}".format(message))


class InvalidStateArgument(Exception):
    """
    Raised when a state given on the command line does not fit the platform.

    Parameters
    ----------
    value: str
        The argument as given
    expected: int
        State dimension of the platform
    """

    def __init__(self, value: str, expected: int):
        super().__init__("State '{}' must be a list of {} numbers".format(value, expected))
