"""
Typed configuration options.

Solvers and the experiment declare their options as a schema, mapping the name
of an option to a :py:class:`ConfigOption`. :py:func:`complete_config` checks a
user supplied dictionary against such a schema and fills in the defaults.

Config files are YAML mappings. For convenience, flat ``key = value`` lines are
accepted as well::

    guests = 16
    tables = 2
    e_values = [0.02, 0.04, 0.06]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Generic, Optional, TypeVar

from yaml import load, Loader, YAMLError

T = TypeVar("T")

_KEY_VALUE_LINE = re.compile(r"^(\s*[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")


class ConfigError(ValueError):
    """A configuration value is unknown, or has the wrong type or range."""


class Option(Generic[T]):
    """Base class of all option types."""

    def coerce(self, name: str, value: Any) -> T:
        """
        Check ``value`` and convert it to the type of the option.

        :param name: The name of the option, used in error messages
        :type name: str
        :param value: The raw value, e.g. from a YAML file
        :type value: Any
        :raises ConfigError: If the value does not fit the option
        :rtype: T
        """
        raise NotImplementedError


@dataclass
class ConfigOption(Generic[T]):
    type: Option[T]
    description: str
    default: T


class BoolOption(Option[bool]):
    def coerce(self, name: str, value: Any) -> bool:
        if isinstance(value, bool):
            return value
        raise ConfigError(f"{name}: expected a boolean, got {value!r}")


@dataclass
class IntOption(Option[int]):
    minimum: Optional[int] = None

    def coerce(self, name: str, value: Any) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{name}: expected an integer, got {value!r}")
        if self.minimum is not None and value < self.minimum:
            raise ConfigError(f"{name}: must be at least {self.minimum}, got {value}")
        return value


class OptionalIntOption(Option[Optional[int]]):
    def coerce(self, name: str, value: Any) -> Optional[int]:
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{name}: expected an integer or nothing, got {value!r}")
        return value


@dataclass
class FloatOption(Option[float]):
    minimum: Optional[float] = None
    maximum: Optional[float] = None

    def coerce(self, name: str, value: Any) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name}: expected a number, got {value!r}")
        if self.minimum is not None and value < self.minimum:
            raise ConfigError(f"{name}: must be at least {self.minimum}, got {value}")
        if self.maximum is not None and value > self.maximum:
            raise ConfigError(f"{name}: must be at most {self.maximum}, got {value}")
        return float(value)


class ListFloatOption(Option[list[float]]):
    def coerce(self, name: str, value: Any) -> list[float]:
        if not isinstance(value, list):
            raise ConfigError(f"{name}: expected a list of numbers, got {value!r}")
        return [FloatOption().coerce(name, element) for element in value]


@dataclass
class ChoiceOption(Option[str]):
    choices: list[str]

    def coerce(self, name: str, value: Any) -> str:
        if value not in self.choices:
            raise ConfigError(f"{name}: expected one of {', '.join(self.choices)}, got {value!r}")
        return str(value)


def complete_config(
    schema: dict[str, ConfigOption[Any]], values: dict[str, Any]
) -> dict[str, Any]:
    """
    Validate ``values`` against ``schema`` and add defaults for missing keys.

    :param schema: Maps option names to their declaration
    :type schema: dict[str, ConfigOption[Any]]
    :param values: User supplied values
    :type values: dict[str, Any]
    :raises ConfigError: On unknown keys or invalid values
    :return: A new dictionary with exactly the keys of the schema
    :rtype: dict[str, Any]
    """
    unknown = sorted(set(values) - set(schema))
    if unknown:
        raise ConfigError(f"Unknown option(s): {', '.join(unknown)}")

    completed: dict[str, Any] = {}
    for name, option in schema.items():
        if name in values:
            completed[name] = option.type.coerce(name, values[name])
        else:
            completed[name] = option.default
    return completed


def parse_config_text(text: str) -> dict[str, Any]:
    """
    Parse the content of a config file.

    Lines of the form ``key = value`` are rewritten to ``key: value``, so
    values are typed by the YAML parser in both styles.

    :param text: The content of the file
    :type text: str
    :raises ConfigError: If the text is not a mapping
    :rtype: dict[str, Any]
    """
    lines = [_KEY_VALUE_LINE.sub(r"\1: \2", line) for line in text.splitlines()]
    try:
        config = load("\n".join(lines), Loader=Loader)
    except YAMLError as exc:
        raise ConfigError(f"Could not parse config: {exc}") from exc
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ConfigError("A config file must contain a mapping of options")
    return config


def load_config_file(path: str) -> dict[str, Any]:
    """Read and parse a config file, see :py:func:`parse_config_text`."""
    with open(path, "rb") as file:
        data = file.read()
    try:
        text = data.decode("utf8")
    except UnicodeDecodeError as exc:
        raise ConfigError(f"{path} is not valid UTF-8: {exc}") from exc
    return parse_config_text(text)
