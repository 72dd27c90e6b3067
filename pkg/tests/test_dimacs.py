"""Various tests on reading and writing dimacs cnf files"""

import io
import logging
import random

import pytest

from cnfsat.cnf import Clause, Formula, Model
from cnfsat.dimacs import (
    ClauseCountMismatch,
    DimacsDocument,
    DimacsError,
    MalformedModel,
    MissingHeader,
    TrailingGarbage,
    VarOutOfRange,
    ZeroInsideHeader,
    format_model,
    parse_dimacs,
    parse_model,
    read_dimacs,
    serialize_dimacs,
    write_dimacs,
)

from helpers import random_formula

f1 = """c  simple example
c
p cnf 3 2
1 -3 0
2 3 -1 0
"""

f2 = """p cnf 4 3
  1    2
 -3  0 4 -1 0
   2 0
"""

f3 = """c ends with a percent sign
p cnf 2 1
1 2 0
%
0
"""


def test_parse_simple():
    doc = parse_dimacs(f1)
    assert doc.comments == [" simple example", ""]
    assert doc.formula == Formula.from_lists([[1, -3], [2, 3, -1]], 3)


def test_clauses_span_lines():
    doc = parse_dimacs(f2)
    assert doc.formula.clauses == (
        Clause.from_ints([1, 2, -3]),
        Clause.from_ints([4, -1]),
        Clause.from_ints([2]),
    )
    assert doc.formula.num_vars == 4


def test_percent_ends_input():
    assert parse_dimacs(f3).formula.clauses == (Clause.from_ints([1, 2]),)


def test_parse_bytes_and_streams():
    expected = parse_dimacs(f1).formula
    assert parse_dimacs(f1.encode("utf8")).formula == expected
    assert parse_dimacs(io.StringIO(f1)).formula == expected
    assert parse_dimacs(io.BytesIO(f1.encode("utf8"))).formula == expected


def test_bytes_that_are_not_utf8():
    with pytest.raises(DimacsError):
        parse_dimacs(b"p cnf 1 1\n1 0\nc \xff\n")
    with pytest.raises(MalformedModel):
        parse_model(b"\xff\xfe 1\n", 1)
    with pytest.raises(MalformedModel):
        parse_model(io.BytesIO(b"v 1 \xe9 0\n"), 1)


def test_empty_clause():
    assert parse_dimacs("p cnf 0 1\n0\n").formula.clauses == (Clause(),)


def test_unused_variables_are_kept():
    assert parse_dimacs("p cnf 7 1\n1 0\n").formula.num_vars == 7


@pytest.mark.parametrize(
    "text,exception",
    [
        ("1 2 0\n", MissingHeader),
        ("c only a comment\n", MissingHeader),
        ("1 0\np cnf 1 1\n", MissingHeader),
        ("p cnf 2 1\n1 3 0\n", VarOutOfRange),
        ("p cnf 2 1\n-3 0\n", VarOutOfRange),
        ("p cnf 2 1 0\n1 0\n", ZeroInsideHeader),
        ("p cnf 2 1\n1 x 0\n", TrailingGarbage),
        ("p cnf 2 1\np cnf 2 1\n1 0\n", DimacsError),
        ("p dnf 2 1\n1 0\n", DimacsError),
        ("p cnf two 1\n1 0\n", DimacsError),
    ],
)
def test_malformed_input(text, exception):
    with pytest.raises(exception):
        parse_dimacs(text)


def test_clause_count_mismatch(caplog):
    text = "p cnf 2 3\n1 0\n2 0\n"
    with pytest.raises(ClauseCountMismatch):
        parse_dimacs(text, strict=True)
    with caplog.at_level(logging.WARNING, logger="cnfsat"):
        doc = parse_dimacs(text)
    assert len(doc.formula) == 2
    assert "declares 3 clauses" in caplog.text


def test_unterminated_last_clause():
    text = "p cnf 2 2\n1 0\n-2 1\n"
    with pytest.raises(TrailingGarbage):
        parse_dimacs(text, strict=True)
    assert parse_dimacs(text).formula.clauses[-1] == Clause.from_ints([1, -2])


def test_serialize():
    doc = DimacsDocument(Formula.from_lists([[1, -2], [2]]), ["made by hand"])
    assert serialize_dimacs(doc) == "c made by hand\np cnf 2 2\n1 -2 0\n2 0\n"
    assert serialize_dimacs(Formula(3)) == "p cnf 3 0\n"


def test_round_trip_keeps_comments():
    doc = parse_dimacs(f1)
    again = parse_dimacs(serialize_dimacs(doc))
    assert again == doc


def test_read_and_write(tmp_path):
    path = str(tmp_path / "formula.cnf")
    formula = Formula.from_lists([[1, 2, 3], [-1], []], 4)
    write_dimacs(path, formula)
    assert read_dimacs(path, strict=True).formula == formula


def test_parse_model():
    assert parse_model("s SATISFIABLE\nv 1 -2\nv 3 0\n", 3).values == (True, False, True)
    assert parse_model("1\n-2\n", 2).values == (True, False)
    assert parse_model("c a comment\n-1 2 0 3\n", 2).values == (False, True)


@pytest.mark.parametrize("text", ["v 1 0\n", "v 1 -1 2 0\n", "v 1 x 0\n", "v 1 3 -2 0\n"])
def test_parse_model_rejects(text):
    with pytest.raises(MalformedModel):
        parse_model(text, 2)


def test_format_model():
    assert format_model(Model((True, False))) == "v 1 -2 0"
    assert format_model(Model()) == "v 0"
    model = Model((False, True, True))
    assert parse_model(format_model(model), 3) == model


def test_round_trip_random_formulas():
    rng = random.Random(5)
    for _ in range(100):
        formula = random_formula(rng)
        assert parse_dimacs(serialize_dimacs(formula), strict=True).formula == formula


@pytest.mark.slow
def test_round_trip_thousand_formulas():
    rng = random.Random(2024)
    for _ in range(1000):
        formula = random_formula(rng, max_vars=30, max_clauses=80, max_width=6)
        assert parse_dimacs(serialize_dimacs(formula), strict=True).formula == formula
