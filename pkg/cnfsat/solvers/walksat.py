"""
WalkSAT local search.

Starting from a random model, WalkSAT repeatedly picks a random clause that is
false in the model and flips one of its variables: with probability ``p`` a
random one ("random walk"), otherwise the one that maximizes the number of
satisfied clauses after the flip ("min-conflicts"), ties broken uniformly at
random. It gives up after ``max_flips`` flips.

Whether the model satisfies the formula is checked before every flip, so a
model is returned after at most ``max_flips`` flips, and the state reached by
the last flip is not checked.

All random choices are drawn from one :py:class:`cnfsat.rng.DeterministicRNG`
in this order:

1. the initial model, one :py:meth:`~cnfsat.rng.DeterministicRNG.coin` per
   variable ``1..n``,
2. per flip, the clause, ``randbelow(#false clauses)`` over the false clauses
   in formula order,
3. the branch, ``random() < p`` takes the random walk,
4. the variable, ``randbelow(#variables of the clause)`` in the random walk,
   or ``randbelow(#ties)`` in the greedy branch, only if several variables tie.

A run is therefore determined by the formula, ``p``, ``max_flips`` and the seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from ..cnf import (
    Clause,
    Formula,
    Model,
    UnknownReason,
    Variable,
    Verdict,
    count_satisfied,
    eval_formula,
)
from ..config import ConfigOption, FloatOption, IntOption, OptionalIntOption
from ..log import logger
from ..rng import DeterministicRNG
from .solver import Solver, available_solvers


@dataclass(frozen=True)
class WalkSatParams:
    """
    :param p: Probability of a random walk move
    :type p: float
    :param max_flips: Number of flips before giving up
    :type max_flips: int
    :param seed: Seed of the random stream, drawn from the OS if ``None``
    :type seed: Optional[int]
    """

    p: float = 0.5
    max_flips: int = 100
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p has to be in [0, 1], got {self.p}")
        if self.max_flips < 1:
            raise ValueError(f"max_flips has to be positive, got {self.max_flips}")


@dataclass
class WalkSatStats:
    """
    :param flips_used: Number of flips done
    :param restarts: Always 0, there is a single try
    :param final_unsat_count: Number of false clauses at the end
    :param seed: The seed that was actually used
    """

    flips_used: int = 0
    restarts: int = 0
    final_unsat_count: int = 0
    seed: int = 0


def verify_model(formula: Formula, model: Model) -> bool:
    """Check a certificate by evaluating the formula."""
    return eval_formula(formula, model)


def _pick_among(candidates: list[Variable], scores: list[int], rng: DeterministicRNG) -> Variable:
    best = max(scores)
    ties = [var for var, score in zip(candidates, scores) if score == best]
    if len(ties) == 1:
        return ties[0]
    return ties[rng.randbelow(len(ties))]


def choose_flip_var(
    clause: Clause, model: Model, formula: Formula, p: float, rng: DeterministicRNG
) -> Variable:
    """
    Choose the variable of a false clause to flip.

    With probability ``p`` a uniformly random variable of the clause,
    otherwise one that maximizes :py:func:`cnfsat.cnf.count_satisfied` after
    the flip, uniformly among ties.

    :param clause: A non-empty clause that is false in ``model``
    :type clause: Clause
    :param model: The current model
    :type model: Model
    :param formula: The formula to satisfy
    :type formula: Formula
    :param p: Probability of the random walk
    :type p: float
    :param rng: The random stream
    :type rng: DeterministicRNG
    :rtype: Variable
    """
    candidates = clause.variables()
    if rng.random() < p:
        return candidates[rng.randbelow(len(candidates))]
    scores = [count_satisfied(formula, model.flipped(var)) for var in candidates]
    return _pick_among(candidates, scores, rng)


class _SearchState:
    """
    The current model with the number of true literals of every clause.

    Makes the score of a flip cost proportional to the occurrences of the
    variable, with the same results as :py:func:`choose_flip_var`.
    """

    def __init__(self, formula: Formula, values: list[bool]):
        self.clauses = formula.clauses
        self.values = values
        self.occurrences: list[list[tuple[int, bool]]] = [[] for _ in range(len(values) + 1)]
        self.true_count: list[int] = []
        for index, clause in enumerate(self.clauses):
            count = 0
            for lit in clause.literals:
                self.occurrences[lit.var].append((index, lit.negated))
                if values[lit.var - 1] != lit.negated:
                    count += 1
            self.true_count.append(count)

    def false_clauses(self) -> list[int]:
        return [index for index, count in enumerate(self.true_count) if count == 0]

    def satisfied_after_flip(self, var: Variable, satisfied: int) -> int:
        change: dict[int, int] = {}
        value = self.values[var - 1]
        for index, negated in self.occurrences[var]:
            change[index] = change.get(index, 0) + (-1 if value != negated else 1)
        for index, delta in change.items():
            before = self.true_count[index] > 0
            after = self.true_count[index] + delta > 0
            satisfied += int(after) - int(before)
        return satisfied

    def choose(self, clause: Clause, p: float, satisfied: int, rng: DeterministicRNG) -> Variable:
        candidates = clause.variables()
        if rng.random() < p:
            return candidates[rng.randbelow(len(candidates))]
        scores = [self.satisfied_after_flip(var, satisfied) for var in candidates]
        return _pick_among(candidates, scores, rng)

    def flip(self, var: Variable) -> None:
        value = self.values[var - 1]
        for index, negated in self.occurrences[var]:
            self.true_count[index] += -1 if value != negated else 1
        self.values[var - 1] = not value


def walksat(
    formula: Formula, params: Optional[WalkSatParams] = None
) -> tuple[Verdict, WalkSatStats]:
    """
    Search a model of ``formula``.

    :param formula: The formula
    :type formula: Formula
    :param params: Search parameters, see :py:class:`WalkSatParams`
    :type params: Optional[WalkSatParams]
    :return: Satisfiable with a model, or Unknown if no model was found
        within the flip budget. WalkSAT never reports Unsatisfiable.
    :rtype: tuple[Verdict, WalkSatStats]
    """
    params = params or WalkSatParams()
    rng = DeterministicRNG(params.seed)
    stats = WalkSatStats(seed=rng.seed)
    state = _SearchState(formula, [rng.coin() for _ in range(formula.num_vars)])

    for _ in range(params.max_flips):
        false_clauses = state.false_clauses()
        if not false_clauses:
            return Verdict.satisfiable(Model(tuple(state.values))), stats
        clause = state.clauses[false_clauses[rng.randbelow(len(false_clauses))]]
        if clause.is_empty():
            logger.debug("WalkSAT: the empty clause can not be satisfied")
            break
        satisfied = len(state.clauses) - len(false_clauses)
        state.flip(state.choose(clause, params.p, satisfied, rng))
        stats.flips_used += 1

    stats.final_unsat_count = len(state.false_clauses())
    logger.debug(
        "WalkSAT: giving up after %d flips, %d clauses false",
        stats.flips_used,
        stats.final_unsat_count,
    )
    return Verdict.unknown(UnknownReason.FLIP_BUDGET_EXHAUSTED), stats


class WalkSatSolver(Solver):
    """
    WalkSAT as a solver.

    Config options are:
        -``p``, probability of a random walk move
        -``max_flips``, number of flips before giving up
        -``seed``, seed of the random stream, overridden by the seed passed
         to :py:meth:`solve`
    """

    solver_name = "walksat"
    config_schema: dict[str, ConfigOption[Any]] = {
        "p": ConfigOption(FloatOption(0.0, 1.0), "Probability of a random walk move", 0.5),
        "max_flips": ConfigOption(IntOption(minimum=1), "Flips before giving up", 100),
        "seed": ConfigOption(OptionalIntOption(), "Seed, random if empty", None),
    }

    def do_solve(self, formula: Formula, seed: Optional[int]) -> tuple[Verdict, WalkSatStats]:
        params = WalkSatParams(
            p=self.config["p"],
            max_flips=self.config["max_flips"],
            seed=seed if seed is not None else self.config["seed"],
        )
        return walksat(formula, params)


available_solvers["walksat"] = WalkSatSolver
