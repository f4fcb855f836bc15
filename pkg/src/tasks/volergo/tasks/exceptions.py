"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""


class ConfigurationMismatch(Exception):
    """
    Raised when a suite is asked to run with a platform or model it does not bind.

    Parameters
    ----------
    suite: str
        Benchmark suite
    reason: str
        What does not fit
    """

    def __init__(self, suite: str, reason: str):
        super().__init__("Suite '{}' cannot run: {}".format(suite, reason))


class UnknownSuite(Exception):
    """
    Raised for a suite name outside q1, erasing, ground and aerial.

    Parameters
    ----------
    name: str
        The requested suite
    """

    def __init__(self, name: str):
        super().__init__("Unknown benchmark suite '{}'".format(name))


class UnknownShape(Exception):
    """
    Raised for a tool or target shape that is not bundled.

    Parameters
    ----------
    name: str
        The requested shape
    """

    def __init__(self, name: str):
        super().__init__("Unknown shape '{}'".format(name))
