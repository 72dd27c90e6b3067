"""
Propositional resolution.

The clause set is saturated with resolvents, round by round, until either the
empty clause is derived, which proves the formula unsatisfiable, or a round
produces no clause that is not already in the set, which proves it
satisfiable.

Every unordered pair of clauses is resolved exactly once: in each round, the
clauses added in the previous round are resolved against all clauses with a
smaller index. Candidate partners are looked up by complementary literal.

Resolution is complete but can take exponential time and space, so every run
is bounded by :py:class:`ResolutionLimits`. Hitting a limit gives an Unknown
verdict, never a wrong one.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Optional

from ..cnf import Clause, Formula, Literal, UnknownReason, Verdict, is_tautology, negate
from ..config import BoolOption, ConfigOption, FloatOption, IntOption
from ..log import logger
from .solver import Solver, available_solvers

_PAIRS_BETWEEN_CLOCK_CHECKS = 256


@dataclass(frozen=True)
class ResolutionLimits:
    """
    Bounds of one resolution run.

    :param max_clauses: The largest clause set to build
    :type max_clauses: int
    :param max_rounds: The largest number of rounds
    :type max_rounds: int
    :param time_budget: Wall clock budget in seconds
    :type time_budget: float
    """

    max_clauses: int = 200_000
    max_rounds: int = 1000
    time_budget: float = 60.0

    def __post_init__(self) -> None:
        if self.max_clauses < 1 or self.max_rounds < 1 or self.time_budget <= 0:
            raise ValueError(f"All resolution limits have to be positive: {self}")


@dataclass
class ResolutionStats:
    """
    :param rounds: The number of started rounds
    :param clauses_final: The size of the clause set at the end
    :param resolvents_generated: Resolvents produced, including duplicates
    :param elapsed: Seconds spent
    :param empty_clause_found: The empty clause is in the clause set, either
        given or derived
    """

    rounds: int = 0
    clauses_final: int = 0
    resolvents_generated: int = 0
    elapsed: float = 0.0
    empty_clause_found: bool = False


def pl_resolve(ci: Clause, cj: Clause, discard_tautologies: bool = True) -> set[Clause]:
    """
    Return all resolvents of two clauses.

    For every variable that occurs positively in one and negatively in the
    other clause, one resolvent is built. Duplicate literals are merged.

    :param ci: The first clause
    :type ci: Clause
    :param cj: The second clause
    :type cj: Clause
    :param discard_tautologies: Leave out resolvents that are tautologies
    :type discard_tautologies: bool
    :rtype: set[Clause]
    """
    others = set(cj.literals)
    resolvents: set[Clause] = set()
    for lit in ci.literals:
        complement = negate(lit)
        if complement not in others:
            continue
        resolvent = Clause(
            tuple(other for other in ci.literals if other != lit)
            + tuple(other for other in cj.literals if other != complement)
        )
        if discard_tautologies and is_tautology(resolvent):
            continue
        resolvents.add(resolvent)
    return resolvents


def pl_resolution(
    formula: Formula,
    limits: Optional[ResolutionLimits] = None,
    discard_tautologies: bool = True,
) -> tuple[Verdict, ResolutionStats]:
    """
    Decide ``formula`` by saturation.

    :param formula: The formula
    :type formula: Formula
    :param limits: Resource bounds, defaults to :py:class:`ResolutionLimits()`
    :type limits: Optional[ResolutionLimits]
    :param discard_tautologies: Drop tautologies from the input and from the
        resolvents
    :type discard_tautologies: bool
    :return: Unsatisfiable, Satisfiable without a model, or Unknown if a limit
        was hit, together with statistics
    :rtype: tuple[Verdict, ResolutionStats]
    """
    limits = limits or ResolutionLimits()
    start = time.monotonic()
    deadline = start + limits.time_budget
    stats = ResolutionStats()

    def finish(verdict: Verdict) -> tuple[Verdict, ResolutionStats]:
        stats.clauses_final = len(ordered)
        stats.elapsed = time.monotonic() - start
        return verdict, stats

    ordered: list[Clause] = []
    index_of: dict[Clause, int] = {}
    by_literal: dict[Literal, list[int]] = {}

    def add(clause: Clause) -> None:
        index_of[clause] = len(ordered)
        for lit in clause.literals:
            by_literal.setdefault(lit, []).append(len(ordered))
        ordered.append(clause)

    for clause in formula.clauses:
        if clause.is_empty():
            stats.empty_clause_found = True
            return finish(Verdict.unsatisfiable())
        if discard_tautologies and is_tautology(clause):
            continue
        if clause not in index_of:
            add(clause)

    if len(ordered) > limits.max_clauses:
        logger.info("Resolution: input exceeds %d clauses", limits.max_clauses)
        return finish(Verdict.unknown(UnknownReason.RESOURCE_LIMIT_EXCEEDED))

    frontier_start = 0
    pairs = 0
    while True:
        if stats.rounds >= limits.max_rounds:
            logger.info("Resolution: stopped after %d rounds", stats.rounds)
            return finish(Verdict.unknown(UnknownReason.RESOURCE_LIMIT_EXCEEDED))
        stats.rounds += 1

        end = len(ordered)
        # dict as an ordered set, so indices of added clauses are reproducible
        new: dict[Clause, None] = {}
        for idx in range(frontier_start, end):
            ci = ordered[idx]
            partners = {
                jdx
                for lit in ci.literals
                for jdx in by_literal.get(negate(lit), ())
                if jdx < idx
            }
            for jdx in sorted(partners):
                pairs += 1
                if pairs % _PAIRS_BETWEEN_CLOCK_CHECKS == 0 and time.monotonic() > deadline:
                    logger.info("Resolution: time budget of %ss exceeded", limits.time_budget)
                    return finish(Verdict.unknown(UnknownReason.RESOURCE_LIMIT_EXCEEDED))
                for resolvent in pl_resolve(ci, ordered[jdx], discard_tautologies):
                    stats.resolvents_generated += 1
                    if resolvent.is_empty():
                        stats.empty_clause_found = True
                        logger.debug("Resolution: empty clause in round %d", stats.rounds)
                        return finish(Verdict.unsatisfiable())
                    if resolvent not in index_of:
                        new[resolvent] = None
                if end + len(new) > limits.max_clauses:
                    logger.info("Resolution: clause set exceeds %d clauses", limits.max_clauses)
                    return finish(Verdict.unknown(UnknownReason.RESOURCE_LIMIT_EXCEEDED))

        logger.debug(
            "Resolution round %d: %d clauses, %d new", stats.rounds, len(ordered), len(new)
        )
        if not new:
            return finish(Verdict.satisfiable())
        for clause in new:
            add(clause)
        frontier_start = end


class ResolutionSolver(Solver):
    """
    PL-Resolution as a solver.

    Config options are:
        -``max_clauses``, ``max_rounds``, ``time_budget``, see
         :py:class:`ResolutionLimits`
        -``discard_tautologies``, drop tautological clauses
    """

    solver_name = "resolution"
    config_schema: dict[str, ConfigOption[Any]] = {
        "max_clauses": ConfigOption(IntOption(minimum=1), "Largest clause set", 200_000),
        "max_rounds": ConfigOption(IntOption(minimum=1), "Largest number of rounds", 1000),
        "time_budget": ConfigOption(
            FloatOption(minimum=1e-9), "Time budget in seconds", 60.0
        ),
        "discard_tautologies": ConfigOption(BoolOption(), "Drop tautologies", True),
    }

    @property
    def limits(self) -> ResolutionLimits:
        return ResolutionLimits(
            max_clauses=self.config["max_clauses"],
            max_rounds=self.config["max_rounds"],
            time_budget=self.config["time_budget"],
        )

    def do_solve(self, formula: Formula, seed: Optional[int]) -> tuple[Verdict, ResolutionStats]:
        """Saturate, the seed is ignored."""
        return pl_resolution(formula, self.limits, self.config["discard_tautologies"])


available_solvers["resolution"] = ResolutionSolver
