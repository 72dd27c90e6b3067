"""
Truth table enumeration.

The oracle decides a formula by trying all ``2^n`` assignments. It serves as
ground truth for the other solvers on small formulas.

Assignments are enumerated in counting order, with variable 1 as the most
significant bit and false before true, so the returned model is the
lexicographically first satisfying assignment. Blocks of assignments are
evaluated at once with ``numpy``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Iterator, Optional

import numpy as np

from ..cnf import Formula, Model, Verdict
from ..config import ConfigOption, IntOption
from ..seating import EncodingMap, SeatingChart, SeatingInstance
from .solver import Solver, available_solvers

DEFAULT_VAR_LIMIT = 24
DEFAULT_SEATING_LIMIT = 1 << 24
_BLOCK_BITS = 16


class TooManyVariables(ValueError):
    """The search space exceeds the configured limit."""


@dataclass
class OracleStats:
    """
    :param assignments_checked: The number of assignments enumerated before
        the answer was known
    :type assignments_checked: int
    """

    assignments_checked: int


def _check_limit(formula: Formula, var_limit: int) -> None:
    if formula.num_vars > var_limit:
        raise TooManyVariables(
            f"Formula has {formula.num_vars} variables, the limit is {var_limit}"
        )


def _satisfied_blocks(formula: Formula) -> Iterator[tuple[int, np.ndarray]]:
    """
    Evaluate the formula on consecutive blocks of assignments.

    Yields the index of the first assignment of the block and a boolean
    array, which is true for every satisfying assignment in the block.
    """
    num_vars = formula.num_vars
    total = 1 << num_vars
    block = min(total, 1 << _BLOCK_BITS)
    # column k holds variable k + 1, variable 1 is the most significant bit
    shifts = np.arange(num_vars - 1, -1, -1, dtype=np.int64)
    clauses = [
        (
            np.array([lit.var - 1 for lit in clause.literals], dtype=np.intp),
            np.array([lit.negated for lit in clause.literals], dtype=bool),
        )
        for clause in formula.clauses
    ]

    for offset in range(0, total, block):
        indices = np.arange(offset, offset + block, dtype=np.int64)
        bits = ((indices[:, np.newaxis] >> shifts[np.newaxis, :]) & 1).astype(bool)
        satisfied = np.ones(block, dtype=bool)
        for columns, negated in clauses:
            if columns.size == 0:
                satisfied[:] = False
            else:
                satisfied &= np.any(bits[:, columns] != negated, axis=1)
            if not satisfied.any():
                break
        yield offset, satisfied


def _model_of_index(index: int, num_vars: int) -> Model:
    return Model(tuple(bool((index >> (num_vars - var)) & 1) for var in range(1, num_vars + 1)))


def _solve(formula: Formula, var_limit: int) -> tuple[Verdict, OracleStats]:
    _check_limit(formula, var_limit)
    checked = 0
    for offset, satisfied in _satisfied_blocks(formula):
        if satisfied.any():
            index = offset + int(np.argmax(satisfied))
            return Verdict.satisfiable(_model_of_index(index, formula.num_vars)), OracleStats(
                index + 1
            )
        checked = offset + len(satisfied)
    return Verdict.unsatisfiable(), OracleStats(checked)


def brute_force_solve(formula: Formula, var_limit: int = DEFAULT_VAR_LIMIT) -> Verdict:
    """
    Decide ``formula`` by enumerating all assignments.

    :param formula: The formula
    :type formula: Formula
    :param var_limit: The largest number of variables to accept
    :type var_limit: int
    :raises TooManyVariables: If the formula has more than ``var_limit`` variables
    :return: Satisfiable with the lexicographically first model, or
        Unsatisfiable. Never Unknown.
    :rtype: Verdict
    """
    return _solve(formula, var_limit)[0]


def count_models(formula: Formula, var_limit: int = DEFAULT_VAR_LIMIT) -> int:
    """
    Count the satisfying assignments over all ``num_vars`` variables.

    :raises TooManyVariables: If the formula has more than ``var_limit`` variables
    :rtype: int
    """
    _check_limit(formula, var_limit)
    return sum(int(satisfied.sum()) for _, satisfied in _satisfied_blocks(formula))


def brute_force_seating(
    inst: SeatingInstance, limit: int = DEFAULT_SEATING_LIMIT
) -> Verdict:
    """
    Decide a seating instance without going through CNF.

    All ``N^M`` maps from guests to tables are tried in lexicographic order
    and checked against the Friends and Enemies constraints directly.

    :param inst: The instance
    :type inst: SeatingInstance
    :param limit: The largest number of seatings to accept
    :type limit: int
    :raises TooManyVariables: If ``N^M`` exceeds ``limit``
    :return: Satisfiable with the first valid seating, translated into a model
        with the numbering of :py:func:`cnfsat.seating.encode`, or Unsatisfiable
    :rtype: Verdict
    """
    if inst.num_tables**inst.num_guests > limit:
        raise TooManyVariables(
            f"{inst.num_tables}^{inst.num_guests} seatings exceed the limit of {limit}"
        )
    encoding = EncodingMap(inst.num_guests, inst.num_tables)
    friends = [(i - 1, j - 1) for i, j in inst.friends]
    enemies = [(i - 1, j - 1) for i, j in inst.enemies]
    for tables in product(range(1, inst.num_tables + 1), repeat=inst.num_guests):
        if all(tables[i] == tables[j] for i, j in friends) and all(
            tables[i] != tables[j] for i, j in enemies
        ):
            chart = SeatingChart(tables)
            return Verdict.satisfiable(encoding.model_of(chart))
    return Verdict.unsatisfiable()


class OracleSolver(Solver):
    """
    Truth table enumeration as a solver.

    Config options are:
        -``var_limit``, the largest number of variables to accept
    """

    solver_name = "oracle"
    config_schema: dict[str, ConfigOption[Any]] = {
        "var_limit": ConfigOption(
            IntOption(minimum=0), "Largest number of variables", DEFAULT_VAR_LIMIT
        ),
    }

    def do_solve(self, formula: Formula, seed: Optional[int]) -> tuple[Verdict, OracleStats]:
        """Enumerate, the seed is ignored."""
        return _solve(formula, self.config["var_limit"])


available_solvers["oracle"] = OracleSolver
