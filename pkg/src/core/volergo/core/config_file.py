"""Volergo volumetric ergodic control toolkit.

This program and the accompanying materials are made available under the terms of the
Eclipse Public License v2.0 which accompanies this distribution, and is available at

https://www.eclipse.org/legal/epl-v20.html

SPDX-License-Identifier: EPL-2.0

Copyright Contributors to the Volergo Project.
"""

import json
import os
import warnings
from copy import deepcopy
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Sequence

import commentjson
import yaml
from deepmerge import Merger

from .constants import constants
from .custom_warnings import ConfigOverrideWarning
from .exceptions import ConfigFileNotFound, ConfigFileUnreadable, ConfigValidationFailed, UnknownOverride
from .logger import Log
from .validators import load_schema, schema_defaults, validate_config

# lists (space lengths, inertia, mixture weights) are values, never concatenated
config_merger = Merger([(dict, ["merge"]), (list, ["override"]), (set, ["override"])], ["override"], ["override"])


def _nest(dotted: str, value: Any) -> dict:
    node: Any = value
    for part in reversed(dotted.split(".")):
        node = {part: node}
    return node


def _lookup(document: Mapping, dotted: str) -> Any:
    node: Any = document
    for part in dotted.split("."):
        if not isinstance(node, Mapping) or part not in node:
            raise KeyError(dotted)
        node = node[part]
    return node


def parse_overrides(tokens: Sequence[str]) -> dict:
    """
    Turn ``--section.key=value`` tokens into a nested override document.

    Values are parsed as YAML scalars or flow sequences, so ``10``, ``0.5``, ``true``,
    ``null`` and ``[1, 2]`` arrive typed.

    Parameters
    ----------
    tokens: Sequence[str]
        Raw command-line tokens

    Returns
    -------
    dict
        Nested overrides in token order (later tokens win)

    Raises
    ------
    UnknownOverride
        If a token is not a dotted ``--key=value`` assignment
    """
    overrides: dict = {}
    for token in tokens:
        if not token.startswith("--") or "=" not in token:
            raise UnknownOverride(token)
        key, raw = token[2:].split("=", 1)
        if not key or any(not part for part in key.split(".")):
            raise UnknownOverride(token)
        try:
            value = yaml.safe_load(raw) if raw else ""
        except yaml.YAMLError:
            value = raw
        overrides = config_merger.merge(overrides, _nest(key, value))
    return overrides


def read_config_file(path: str) -> dict:
    """
    Read a JSONC (``.json``) or YAML (``.yaml``/``.yml``) config document.

    Parameters
    ----------
    path: str
        Location of the document

    Returns
    -------
    dict
        The parsed document

    Raises
    ------
    ConfigFileNotFound
        If nothing exists at ``path``
    ConfigFileUnreadable
        If the document does not parse or is not a mapping
    """
    if not os.path.isfile(path):
        raise ConfigFileNotFound(path)
    with open(path, encoding="UTF-8") as file:
        text = file.read()
    try:
        if path.endswith((".yaml", ".yml")):
            document = yaml.safe_load(text)
        else:
            document = commentjson.loads(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = "line {}: ".format(mark.line + 1) if mark is not None else ""
        raise ConfigFileUnreadable(path, where + str(getattr(exc, "problem", exc))) from exc
    except Exception as exc:  # commentjson lets lark and json errors through unwrapped
        raise ConfigFileUnreadable(path, str(exc)) from exc
    if document is None:
        return {}
    if not isinstance(document, dict):
        raise ConfigFileUnreadable(path, "top level must be a mapping")
    return document


@dataclass
class RunConfig:
    """
    Fully resolved configuration of one run.

    Values are layered, lowest priority first: schema defaults, the config file, the
    environment (output root and worker count only), first-class CLI flags, and dotted
    ``--section.key=value`` overrides. The result is validated before anything runs.
    """

    data: dict
    source: Optional[str] = None

    __logger = Log.register_logger(__name__)

    @classmethod
    def load(
        cls,
        path: Optional[str] = None,
        overrides: Sequence[str] = (),
        flags: Optional[Mapping[str, Any]] = None,
        environ: Optional[Mapping[str, str]] = None,
    ) -> "RunConfig":
        """
        Resolve and validate a configuration.

        Parameters
        ----------
        path: Optional[str]
            Config file; defaults only when omitted
        overrides: Sequence[str]
            ``--section.key=value`` tokens
        flags: Optional[Mapping[str, Any]]
            Dotted keys set by first-class CLI options; ``None`` values are skipped
        environ: Optional[Mapping[str, str]]
            Environment to read; ``os.environ`` when omitted

        Returns
        -------
        RunConfig
            The validated configuration

        Raises
        ------
        ConfigValidationFailed
            If the resolved document breaks the schema or an environment value is malformed
        """
        environ = os.environ if environ is None else environ
        schema = load_schema()
        data = schema_defaults(schema)

        file_data: dict = {}
        if path is not None:
            try:
                file_data = read_config_file(path)
            except (ConfigFileNotFound, ConfigFileUnreadable) as exc:
                cls.__logger.error(str(exc))
                raise
            data = config_merger.merge(data, deepcopy(file_data))

        env_root = environ.get(constants["OutputRootEnv"])
        if env_root:
            data = config_merger.merge(data, {"output": {"directory": env_root}})
        env_jobs = environ.get(constants["JobsEnv"])
        if env_jobs:
            try:
                data = config_merger.merge(data, {"jobs": int(env_jobs)})
            except ValueError:
                cls.__logger.error(f"{constants['JobsEnv']}={env_jobs} is not an integer")
                raise ConfigValidationFailed("jobs", f"{constants['JobsEnv']}={env_jobs!r} is not an integer")

        for key, value in (flags or {}).items():
            if value is not None:
                data = config_merger.merge(data, _nest(key, value))

        parsed = parse_overrides(overrides)
        for key in _leaf_keys(parsed):
            try:
                previous = _lookup(file_data, key)
            except KeyError:
                continue
            message = f"Override of {key} replaces {previous!r} from {path}"
            cls.__logger.warning(message)
            warnings.warn(message, ConfigOverrideWarning)
        data = config_merger.merge(data, parsed)

        try:
            validate_config(data, schema)
        except ConfigValidationFailed as exc:
            cls.__logger.error(str(exc))
            raise
        return cls(data=data, source=path)

    def get(self, dotted: str, default: Any = None) -> Any:
        """
        Read a value by dotted path.

        Parameters
        ----------
        dotted: str
            Path such as ``controller.horizon_steps``
        default: Any
            Returned when the path does not exist

        Returns
        -------
        Any
            The stored value
        """
        try:
            return _lookup(self.data, dotted)
        except KeyError:
            return default

    def section(self, name: str) -> dict:
        """
        Return a copy of a top-level section.

        Parameters
        ----------
        name: str
            Section name

        Returns
        -------
        dict
            Deep copy of the section
        """
        return deepcopy(self.data.get(name, {}))

    def updated(self, mapping: Mapping[str, Any]) -> "RunConfig":
        """
        Return a validated copy with dotted keys replaced.

        Parameters
        ----------
        mapping: Mapping[str, Any]
            Dotted keys and their new values

        Returns
        -------
        RunConfig
            The new configuration
        """
        data = deepcopy(self.data)
        for key, value in mapping.items():
            data = config_merger.merge(data, _nest(key, value))
        validate_config(data)
        return RunConfig(data=data, source=self.source)

    @property
    def output_root(self) -> str:
        # noqa: D102
        return self.data["output"]["directory"]

    @property
    def jobs(self) -> int:
        # noqa: D102
        return int(self.data["jobs"])

    def to_json(self) -> str:
        """
        Serialize the resolved configuration.

        Returns
        -------
        str
            Sorted, indented JSON
        """
        return json.dumps(self.data, indent=2, sort_keys=True)

    def echo(self, directory: str) -> str:
        """
        Write the resolved configuration next to a run's outputs.

        Parameters
        ----------
        directory: str
            Output directory, created if missing

        Returns
        -------
        str
            Path of the written file
        """
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, constants["ResolvedConfigName"])
        with open(path, "w", encoding="UTF-8") as file:
            file.write(self.to_json() + "\n")
        return path


def _leaf_keys(document: Mapping, prefix: str = "") -> list:
    keys = []
    for key, value in document.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, Mapping) and value:
            keys.extend(_leaf_keys(value, dotted + "."))
        else:
            keys.append(dotted)
    return keys


def config_reference(schema: Optional[dict] = None) -> str:
    """
    Render every configuration key as a Markdown table.

    Parameters
    ----------
    schema: Optional[dict]
        Schema to document; the packaged one when omitted

    Returns
    -------
    str
        Markdown with one row per leaf key
    """
    schema = schema if schema is not None else load_schema()
    lines = [
        "# volergo configuration reference",
        "",
        "| Key | Type | Default | Description |",
        "| --- | --- | --- | --- |",
    ]

    def walk(node: dict, prefix: str):
        for key, child in node.get("properties", {}).items():
            dotted = f"{prefix}{key}"
            if "properties" in child:
                walk(child, dotted + ".")
                continue
            kind = child.get("type", "")
            kind = " or ".join(kind) if isinstance(kind, list) else kind
            if "enum" in child:
                kind += " (" + ", ".join(str(option) for option in child["enum"]) + ")"
            default = json.dumps(child.get("default"))
            lines.append(f"| `{dotted}` | {kind} | `{default}` | {child.get('description', '')} |")

    walk(schema, "")
    return "\n".join(lines) + "\n"
