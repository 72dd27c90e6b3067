import random
from itertools import product
from math import comb

import pytest

from cnfsat.cnf import Clause, Literal, Model, eval_formula
from cnfsat.seating import (
    EncodingMap,
    InvalidProbability,
    MalformedInstance,
    NotAFunction,
    Relation,
    SeatingChart,
    SeatingInstance,
    chart_respects,
    decode,
    encode,
    generate_instance,
    guest_pairs,
    parse_instance,
    relation_counts,
    serialize_instance,
)
from cnfsat.solvers.oracle import brute_force_seating, brute_force_solve


def test_variable_numbering():
    encoding = EncodingMap(3, 2)
    assert encoding.num_vars == 6
    assert encoding.var_of(1, 1) == 1
    assert encoding.var_of(2, 1) == 3
    assert encoding.var_of(3, 2) == 6
    for var in range(1, 7):
        assert encoding.var_of(*encoding.seat_of(var)) == var
    with pytest.raises(ValueError):
        encoding.var_of(4, 1)
    with pytest.raises(ValueError):
        encoding.seat_of(7)


def test_describe():
    lines = EncodingMap(2, 2).describe()
    assert len(lines) == 4
    assert lines[2] == "var 3 = X(2,1): guest 2 at table 1"


def test_instance_fills_indifferent_pairs():
    inst = SeatingInstance.from_pairs(3, 2, friends=[(2, 1)])
    assert inst.relation(1, 2) is Relation.FRIENDS
    assert inst.relation(3, 1) is Relation.INDIFFERENT
    assert list(inst.relations) == guest_pairs(3)
    assert relation_counts(inst) == (1, 0)


@pytest.mark.parametrize("relations", [{(1, 1): Relation.ENEMIES}, {(2, 4): Relation.FRIENDS}])
def test_instance_rejects_invalid_pairs(relations):
    with pytest.raises(MalformedInstance):
        SeatingInstance(3, 2, relations)


def test_instance_needs_guests_and_tables():
    with pytest.raises(MalformedInstance):
        SeatingInstance(0, 2)
    with pytest.raises(MalformedInstance):
        SeatingInstance(2, 0)


def test_enemies_at_a_single_table():
    formula, _ = encode(SeatingInstance.from_pairs(2, 1, enemies=[(1, 2)]))
    assert formula.num_vars == 2
    assert formula.clauses == (
        Clause.from_ints([1]),
        Clause.from_ints([2]),
        Clause.from_ints([-1, -2]),
    )
    assert brute_force_solve(formula).is_unsatisfiable


def test_clause_order_and_count():
    inst = SeatingInstance.from_pairs(4, 3, friends=[(1, 2)], enemies=[(2, 3), (3, 4)])
    formula, encoding = encode(inst)
    friends, enemies = relation_counts(inst)
    assert len(formula) == 4 + 4 * comb(3, 2) + 2 * friends * 3 + enemies * 3
    # at-least-one clauses first, then at-most-one
    assert formula.clauses[0] == Clause.from_ints([1, 2, 3])
    assert formula.clauses[4] == Clause.from_ints([-1, -2])
    friends_clause = Clause(
        (Literal(encoding.var_of(1, 1), True), Literal(encoding.var_of(2, 1)))
    )
    assert formula.clauses[4 + 12] == friends_clause
    last = Clause.from_ints([-encoding.var_of(3, 3), -encoding.var_of(4, 3)])
    assert formula.clauses[-1] == last


def test_triangle_of_enemies():
    enemies = [(1, 2), (1, 3), (2, 3)]
    two_tables, _ = encode(SeatingInstance.from_pairs(3, 2, enemies=enemies))
    three_tables, _ = encode(SeatingInstance.from_pairs(3, 3, enemies=enemies))
    assert brute_force_solve(two_tables).is_unsatisfiable
    assert brute_force_solve(three_tables).is_satisfiable


def test_friends_of_enemies():
    inst = SeatingInstance.from_pairs(3, 2, friends=[(1, 2), (2, 3)], enemies=[(1, 3)])
    assert brute_force_solve(encode(inst)[0]).is_unsatisfiable
    assert brute_force_seating(inst).is_unsatisfiable


def test_decode():
    inst = SeatingInstance.from_pairs(3, 2, enemies=[(1, 2)])
    formula, encoding = encode(inst)
    verdict = brute_force_solve(formula)
    chart = decode(verdict.model, encoding)
    assert chart_respects(inst, chart)
    assert encoding.model_of(chart) == verdict.model
    assert str(chart).splitlines()[0].startswith("guest 1: table")


@pytest.mark.parametrize("values", [(False, False, True, False), (True, True, False, True)])
def test_decode_not_a_function(values):
    with pytest.raises(NotAFunction):
        decode(Model(values), EncodingMap(2, 2))


def test_chart_respects():
    inst = SeatingInstance.from_pairs(3, 2, friends=[(1, 3)], enemies=[(1, 2)])
    assert chart_respects(inst, SeatingChart((1, 2, 1)))
    assert not chart_respects(inst, SeatingChart((1, 2, 2)))
    assert not chart_respects(inst, SeatingChart((1, 1, 1)))


def test_generate_is_deterministic():
    first = generate_instance(16, 2, 0.1, 0.2, seed=7)
    assert first == generate_instance(16, 2, 0.1, 0.2, seed=7)
    assert first != generate_instance(16, 2, 0.1, 0.2, seed=8)


def test_generate_without_friends():
    inst = generate_instance(16, 2, 0.0, 0.3, seed=1)
    assert inst.friends == []
    assert len(inst.relations) == comb(16, 2)


def test_generate_extremes():
    assert len(generate_instance(5, 2, 1.0, 0.0, seed=1).friends) == 10
    assert len(generate_instance(5, 2, 0.0, 1.0, seed=1).enemies) == 10
    assert relation_counts(generate_instance(5, 2, 0.0, 0.0, seed=1)) == (0, 0)
    assert len(generate_instance(5, 2, 0.7, 0.3, seed=3).relations) == 10


@pytest.mark.parametrize("f,e", [(-0.1, 0.2), (0.2, -0.1), (0.6, 0.5)])
def test_generate_rejects_probabilities(f, e):
    with pytest.raises(InvalidProbability):
        generate_instance(4, 2, f, e, seed=1)


def test_instance_text_round_trip():
    inst = generate_instance(8, 3, 0.2, 0.3, seed=5)
    assert parse_instance(serialize_instance(inst)) == inst


def test_instance_text_format():
    text = "# two enemies\nseating 3 2\n\n2 1 E\n1 3 I\n"
    inst = parse_instance(text)
    assert inst.enemies == [(1, 2)]
    assert serialize_instance(inst) == "seating 3 2\n1 2 E\n"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "1 2 E\n",
        "seating 3\n",
        "seating three 2\n",
        "seating 3 2\n1 2 X\n",
        "seating 3 2\n1 2 E\n2 1 F\n",
        "seating 3 2\n1 4 E\n",
        "seating 3 2\n1 b E\n",
    ],
)
def test_instance_text_errors(text):
    with pytest.raises(MalformedInstance):
        parse_instance(text)


def _relation_assignments(num_guests):
    pairs = guest_pairs(num_guests)
    for relations in product(list(Relation), repeat=len(pairs)):
        yield dict(zip(pairs, relations))


def test_encoder_exhaustive_three_guests():
    for relations in _relation_assignments(3):
        inst = SeatingInstance(3, 2, relations)
        formula, encoding = encode(inst)
        expected = brute_force_seating(inst)
        verdict = brute_force_solve(formula)
        assert verdict.status is expected.status
        if verdict.is_satisfiable:
            assert chart_respects(inst, decode(verdict.model, encoding))
            assert eval_formula(formula, expected.model)


@pytest.mark.slow
def test_encoder_random_instances():
    rng = random.Random(17)
    for index in range(200):
        guests, tables = rng.randint(1, 4), rng.randint(1, 3)
        f = rng.random() * 0.5
        e = rng.random() * (1 - f)
        inst = generate_instance(guests, tables, f, e, seed=index)
        assert brute_force_solve(encode(inst)[0]).status is brute_force_seating(inst).status
