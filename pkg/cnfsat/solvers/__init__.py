"""
Imports all solvers, so that they add themselves to the
``available_solvers`` dictionary.
"""

# pylint: disable=useless-import-alias

from typing import Any, Optional

from .solver import available_solvers as available_solvers
from .solver import Solver as Solver
from .solver import SolveOutcome as SolveOutcome
from .solver import UnknownSolver as UnknownSolver
from .walksat import WalkSatSolver  # noqa: F401
from .resolution import ResolutionSolver  # noqa: F401
from .oracle import OracleSolver  # noqa: F401


def configure_solver(name: str, config: Optional[dict[str, Any]] = None) -> Solver:
    """
    Create the solver registered as ``name``.

    :param name: One of the keys of ``available_solvers``
    :type name: str
    :param config: Options for the solver, see its ``config_schema``
    :type config: Optional[dict[str, Any]]
    :raises UnknownSolver: If no solver has that name
    :raises cnfsat.config.ConfigError: On invalid options
    :rtype: Solver
    """
    if name not in available_solvers:
        raise UnknownSolver(
            f"Unknown solver {name!r}, choose one of {', '.join(sorted(available_solvers))}"
        )
    return available_solvers[name](config or {})
