"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""


class _VolergoWarning(Warning):
    def __init__(self, message: str):
        self.message = message

    def __str__(self) -> str:
        """Return the warning message.

        Returns
        -------
        str
            The message passed at construction
        """
        return str(self.message)


class PlanDegradedWarning(_VolergoWarning):
    """
    Issued when iLQR gives up after hitting the regularization ceiling.

    The controller still executes the best control tape found so far.

    Parameters
    ----------
    message : str
        A string describing the warning.
    """


class QuadratureMassWarning(_VolergoWarning):
    """
    Issued when a target density has visibly less or more than unit mass on the quadrature grid.

    Parameters
    ----------
    message : str
        A string describing the warning.
    """


class ConfigOverrideWarning(_VolergoWarning):
    """
    Issued when a command-line override replaces a value that the config file set explicitly.

    Parameters
    ----------
    message : str
        A string describing the warning.
    """
