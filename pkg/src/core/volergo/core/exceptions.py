"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""


class ConfigFileNotFound(Exception):
    """
    Raised when a run configuration file does not exist.

    Parameters
    ----------
    path: str
        The path that was given
    """

    def __init__(self, path: str):
        super().__init__("The config file {} does not exist.".format(path))


class ConfigFileUnreadable(Exception):
    """
    Raised when a run configuration file cannot be parsed.

    Parameters
    ----------
    path: str
        The offending file
    reason: str
        Parser diagnostics, including the line when the parser reports one
    """

    def __init__(self, path: str, reason: str):
        super().__init__("Could not parse config file {}: {}".format(path, reason))


class ConfigValidationFailed(Exception):
    """
    Raised when a resolved configuration does not match the schema.

    Parameters
    ----------
    field: str
        Dotted path of the offending field
    reason: str
        What is wrong with it
    """

    def __init__(self, field: str, reason: str):
        self.field = field
        super().__init__("Invalid value for '{}': {}".format(field, reason))


class UnknownOverride(Exception):
    """
    Raised when a command-line override is not of the form ``--section.key=value``.

    Parameters
    ----------
    token: str
        The argument that could not be interpreted
    """

    def __init__(self, token: str):
        super().__init__("Cannot interpret override '{}'; expected --section.key=value".format(token))
