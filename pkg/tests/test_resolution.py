import random

import pytest

from cnfsat.cnf import Clause, Formula, Status, UnknownReason
from cnfsat.solvers import configure_solver
from cnfsat.solvers.oracle import brute_force_solve
from cnfsat.solvers.resolution import ResolutionLimits, pl_resolution, pl_resolve

from helpers import pigeonhole, random_formula


def clause(*literals):
    return Clause.from_ints(literals)


def test_resolve_single_pair():
    assert pl_resolve(clause(1, 2), clause(-1, 3)) == {clause(2, 3)}


def test_resolve_to_empty_clause():
    assert pl_resolve(clause(1), clause(-1)) == {Clause()}


def test_resolve_merges_duplicates():
    assert pl_resolve(clause(1, 2), clause(-1, 2)) == {clause(2)}


def test_resolve_without_complement():
    assert pl_resolve(clause(1, 2), clause(1, 3)) == set()


def test_resolve_tautologies():
    assert pl_resolve(clause(1, 2), clause(-1, -2)) == set()
    assert pl_resolve(clause(1, 2), clause(-1, -2), discard_tautologies=False) == {
        clause(2, -2),
        clause(1, -1),
    }


def test_contradiction():
    verdict, stats = pl_resolution(Formula.from_lists([[1], [-1]]))
    assert verdict.is_unsatisfiable
    assert stats.empty_clause_found
    assert stats.rounds == 1


def test_satisfiable_has_no_model():
    verdict, stats = pl_resolution(Formula.from_lists([[1, 2]]))
    assert verdict.status is Status.SATISFIABLE
    assert verdict.model is None
    assert not stats.empty_clause_found
    assert stats.clauses_final == 1


def test_empty_formula():
    assert pl_resolution(Formula(0))[0].is_satisfiable


def test_input_empty_clause():
    verdict, stats = pl_resolution(Formula.from_lists([[1, 2], []]))
    assert verdict.is_unsatisfiable
    assert stats.rounds == 0
    assert stats.empty_clause_found


def test_input_tautologies_are_dropped():
    verdict, stats = pl_resolution(Formula.from_lists([[1, -1], [2]]))
    assert verdict.is_satisfiable
    assert stats.clauses_final == 1


@pytest.mark.parametrize("discard", [True, False])
def test_all_sign_combinations(discard):
    formula = Formula.from_lists([[1, 2], [-1, 2], [1, -2], [-1, -2]])
    assert pl_resolution(formula, discard_tautologies=discard)[0].is_unsatisfiable


def test_small_pigeonhole():
    assert pl_resolution(pigeonhole(3, 2))[0].is_unsatisfiable
    assert pl_resolution(pigeonhole(2, 2))[0].is_satisfiable


CHAIN = Formula.from_lists([[1], [-1, 2], [-2, 3], [-3]])


def test_chain_needs_two_rounds():
    verdict, stats = pl_resolution(CHAIN)
    assert verdict.is_unsatisfiable
    assert stats.rounds == 2


def test_round_limit():
    verdict, stats = pl_resolution(CHAIN, ResolutionLimits(max_rounds=1))
    assert verdict.status is Status.UNKNOWN
    assert verdict.reason is UnknownReason.RESOURCE_LIMIT_EXCEEDED
    assert stats.rounds == 1


def test_clause_limit():
    verdict, _ = pl_resolution(CHAIN, ResolutionLimits(max_clauses=4))
    assert verdict.reason is UnknownReason.RESOURCE_LIMIT_EXCEEDED
    verdict, _ = pl_resolution(CHAIN, ResolutionLimits(max_clauses=3))
    assert verdict.reason is UnknownReason.RESOURCE_LIMIT_EXCEEDED


def test_time_limit():
    verdict, _ = pl_resolution(pigeonhole(4, 3), ResolutionLimits(time_budget=1e-9))
    assert verdict.reason is UnknownReason.RESOURCE_LIMIT_EXCEEDED


@pytest.mark.parametrize(
    "limits", [{"max_clauses": 0}, {"max_rounds": 0}, {"time_budget": 0.0}]
)
def test_invalid_limits(limits):
    with pytest.raises(ValueError):
        ResolutionLimits(**limits)


def test_resolution_solver():
    solver = configure_solver("resolution", {"max_rounds": 1})
    assert solver.limits == ResolutionLimits(max_rounds=1)
    outcome = solver.solve(CHAIN)
    assert outcome.verdict.is_unknown
    assert outcome.stats_dict()["rounds"] == 1
    assert configure_solver("resolution").solve(CHAIN).verdict.is_unsatisfiable


def test_agrees_with_oracle_on_small_formulas():
    rng = random.Random(3)
    for _ in range(60):
        formula = random_formula(rng, max_vars=5, max_clauses=15)
        verdict, _ = pl_resolution(formula)
        assert verdict.status is brute_force_solve(formula).status


@pytest.mark.slow
def test_agrees_with_oracle():
    rng = random.Random(1)
    decided = 0
    for _ in range(500):
        formula = random_formula(rng)
        verdict, _ = pl_resolution(formula)
        if verdict.is_unknown:
            continue
        decided += 1
        assert verdict.status is brute_force_solve(formula).status
    assert decided >= 495
