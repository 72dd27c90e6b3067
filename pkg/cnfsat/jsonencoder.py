"""Wraps the ``json`` module, so that own classes get encoded."""

import json
from dataclasses import asdict, is_dataclass
from enum import Enum
from typing import Any

from .cnf import Model


class CnfsatEncoder(json.JSONEncoder):
    """
    Encoder of :py:class:`Model`, enums and dataclasses.

    A Model is represented by its signed literals, enums by their value and
    all other dataclasses, e.g. :py:class:`cnfsat.experiment.ExperimentPoint`,
    by their dictionary representation.
    """

    def default(self, o: Any) -> Any:
        """Implement the encoding."""
        if isinstance(o, Model):
            return o.to_literals()
        if isinstance(o, Enum):
            return o.value
        if is_dataclass(o) and not isinstance(o, type):
            return asdict(o)
        return json.JSONEncoder.default(self, o)


def dumps(obj: Any, **kw: Any) -> str:
    """Wrap around ``json.dumps`` with the :py:class:`CnfsatEncoder`."""
    return json.dumps(obj, cls=CnfsatEncoder, **kw)

