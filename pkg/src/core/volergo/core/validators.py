"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import os
from typing import Optional

import commentjson
from jsonschema import Draft7Validator
from jsonschema.exceptions import best_match

from .constants import constants
from .exceptions import ConfigValidationFailed

SCHEMA_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), constants["SchemaFile"])


def load_schema(path: Optional[str] = None) -> dict:
    """
    Read the run configuration schema.

    Parameters
    ----------
    path: Optional[str]
        Schema location; the schema shipped with this package when omitted

    Returns
    -------
    dict
        The parsed schema
    """
    with open(path or SCHEMA_PATH, encoding="UTF-8") as file:
        return commentjson.load(file)


def schema_defaults(schema: dict) -> dict:
    """
    Build the fully-defaulted configuration document described by a schema.

    Parameters
    ----------
    schema: dict
        A schema whose leaves carry ``default`` values

    Returns
    -------
    dict
        Nested defaults mirroring the schema's object structure
    """
    defaults = {}
    for key, node in schema.get("properties", {}).items():
        if "properties" in node:
            defaults[key] = schema_defaults(node)
        elif "default" in node:
            defaults[key] = node["default"]
    return defaults


def _field_of(error) -> str:
    path = [str(part) for part in error.absolute_path]
    if error.validator == "additionalProperties" and isinstance(error.instance, dict):
        allowed = set(error.schema.get("properties", {}))
        extra = sorted(set(error.instance) - allowed)
        if extra:
            path.append(extra[0])
    return ".".join(path) or "<root>"


def validate_config(config: dict, schema: Optional[dict] = None) -> None:
    """
    Validate a resolved configuration against the schema.

    Parameters
    ----------
    config: dict
        The configuration document
    schema: Optional[dict]
        The schema; the packaged one when omitted

    Raises
    ------
    ConfigValidationFailed
        Naming the dotted path of the most relevant offending field
    """
    validator = Draft7Validator(schema if schema is not None else load_schema())
    error = best_match(validator.iter_errors(config))
    if error is not None:
        raise ConfigValidationFailed(_field_of(error), error.message)
