"""
Abstract class for solvers.

Also defines the dictionary of available solvers. Each solver should add itself
to this dictionary in its module.
"""

from __future__ import annotations

import time
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, is_dataclass
from typing import Any, Optional, Type

from ..cnf import Formula, Verdict
from ..config import ConfigOption, complete_config


class UnknownSolver(ValueError):
    """No solver with the requested name is registered."""


@dataclass
class SolveOutcome:
    """
    Result of one solver invocation.

    :param verdict: The verdict of the solver
    :type verdict: Verdict
    :param stats: Solver specific statistics, a dataclass
    :type stats: Any
    :param elapsed: Wall clock time of the invocation in seconds
    :type elapsed: float
    """

    verdict: Verdict
    stats: Any
    elapsed: float

    def stats_dict(self) -> dict[str, Any]:
        """Return the statistics as a dictionary, in field order."""
        if is_dataclass(self.stats) and not isinstance(self.stats, type):
            return asdict(self.stats)
        return {}


class Solver(ABC):
    """Parentclass for all solvers.

    A new solver should subclass this, implement :py:func:`Solver.do_solve`
    and set the ``solver_name`` attribute. Options are declared in
    ``config_schema``, the validated options are available as ``config``.

    :attributes: - ``solver_name``, the string used to identify the solver
                 - ``config_schema``, maps option names to
                   :py:class:`cnfsat.config.ConfigOption`
                 - ``config``, the validated configuration
    """

    solver_name: str = ""
    config_schema: dict[str, ConfigOption[Any]] = {}

    def __init__(self, config: Optional[dict[str, Any]] = None):
        """
        Create a solver.

        You should never try to instantiate the Solver class directly, rather
        you should instantiate a subclass.

        :param config: Options of the solver, missing options are taken from
            the defaults of ``config_schema``.
        :type config: Optional[dict[str, Any]]
        :raises cnfsat.config.ConfigError: On unknown or invalid options
        """
        self.config: dict[str, Any] = complete_config(self.config_schema, config or {})

    @abstractmethod
    def do_solve(self, formula: Formula, seed: Optional[int]) -> tuple[Verdict, Any]:
        """
        Solver specific part of solving.

        Abstract, needs to be implemented by subclass.

        :param formula: The formula to decide
        :type formula: Formula
        :param seed: Seed for randomized solvers, overrides a configured seed.
        :type seed: Optional[int]
        :returns: The verdict and a statistics dataclass
        :rtype: tuple[Verdict, Any]
        """

    def solve(self, formula: Formula, seed: Optional[int] = None) -> SolveOutcome:
        """
        Decide ``formula`` and measure the time it took.

        :param formula: The formula to decide
        :type formula: Formula
        :param seed: Seed for randomized solvers
        :type seed: Optional[int]
        :rtype: SolveOutcome
        """
        start = time.perf_counter()
        verdict, stats = self.do_solve(formula, seed)
        return SolveOutcome(verdict=verdict, stats=stats, elapsed=time.perf_counter() - start)


available_solvers: dict[str, Type[Solver]] = {}
