"""
Data structures for formulas in conjunctive normal form.

Variables are dense, 1-based integers, as in DIMACS. A :py:class:`Literal` is a
variable together with a polarity, a :py:class:`Clause` a disjunction of
literals and a :py:class:`Formula` a conjunction of clauses.

All types are immutable. Clauses are canonicalized on construction, i.e. their
literals are sorted by ``(var, polarity)`` with the positive literal first and
duplicates are merged, so two clauses are equal iff they contain the same set
of literals.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Optional

Variable = int


class VariableOutOfRange(ValueError):
    """A literal refers to a variable outside of the formula or the model."""


class Literal(NamedTuple):
    """
    A variable or its negation.

    Ordering of literals is by variable first, and the positive literal comes
    before the negative one.
    """

    var: Variable
    negated: bool = False

    @classmethod
    def from_int(cls, value: int) -> Literal:
        """
        Create a literal from its signed DIMACS representation.

        :param value: ``k`` for the variable ``k``, ``-k`` for its negation
        :type value: int
        :raises ValueError: For ``0``, which is no literal
        :rtype: Literal
        """
        if value == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(value), value < 0)

    def to_int(self) -> int:
        """Return the signed DIMACS representation."""
        return -self.var if self.negated else self.var

    def __str__(self) -> str:
        return f"¬x{self.var}" if self.negated else f"x{self.var}"


def negate(lit: Literal) -> Literal:
    """Flip the polarity of a literal."""
    return Literal(lit.var, not lit.negated)


@dataclass(frozen=True)
class Clause:
    """
    A disjunction of literals.

    The empty clause is a contradiction. Tautologies (clauses containing a
    variable in both polarities) are kept, see :py:func:`is_tautology`.

    :raises VariableOutOfRange: If a literal refers to a variable below 1
    """

    literals: tuple[Literal, ...] = ()

    def __post_init__(self) -> None:
        literals = tuple(sorted(set(self.literals)))
        if literals and literals[0].var < 1:
            raise VariableOutOfRange(f"Variables start at 1, got {literals[0].var}")
        object.__setattr__(self, "literals", literals)

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> Clause:
        """Create a clause from signed DIMACS literals."""
        return cls(tuple(Literal.from_int(value) for value in values))

    def to_ints(self) -> list[int]:
        """Return the literals in their signed DIMACS representation."""
        return [lit.to_int() for lit in self.literals]

    def variables(self) -> list[Variable]:
        """Return the distinct variables of the clause, in ascending order."""
        return sorted({lit.var for lit in self.literals})

    def max_var(self) -> Variable:
        """Return the largest variable in the clause, or 0 for the empty clause."""
        return self.literals[-1].var if self.literals else 0

    def is_empty(self) -> bool:
        return not self.literals

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "□"
        return " ∨ ".join(str(lit) for lit in self.literals)


def canonicalize(raw_literals: Iterable[Literal]) -> Clause:
    """
    Build a clause from arbitrary literals.

    Literals are sorted and duplicates merged. Tautologies are kept.

    :param raw_literals: The literals of the clause
    :type raw_literals: Iterable[Literal]
    :rtype: Clause
    """
    return Clause(tuple(raw_literals))


def is_tautology(clause: Clause) -> bool:
    """Check if the clause contains some variable in both polarities."""
    literals = clause.literals
    # canonical order puts x and ¬x next to each other
    return any(
        first.var == second.var for first, second in zip(literals, literals[1:])
    )


@dataclass(frozen=True)
class Formula:
    """
    A conjunction of clauses over the variables ``1..num_vars``.

    :param num_vars: The number of variables. May exceed the largest variable
        used in a clause.
    :type num_vars: int
    :param clauses: The clauses, in order.
    :type clauses: tuple[Clause, ...]
    """

    num_vars: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError(f"num_vars must not be negative, got {self.num_vars}")
        object.__setattr__(self, "clauses", tuple(self.clauses))
        for clause in self.clauses:
            if clause.max_var() > self.num_vars:
                raise VariableOutOfRange(
                    f"Clause {clause} uses variable {clause.max_var()}, "
                    f"but the formula has only {self.num_vars} variables"
                )

    @classmethod
    def from_lists(
        cls, clauses: Iterable[Iterable[int]], num_vars: Optional[int] = None
    ) -> Formula:
        """
        Build a formula from lists of signed DIMACS literals.

        :param clauses: e.g. ``[[1, -2], [2]]`` for (x1 ∨ ¬x2) ∧ x2
        :type clauses: Iterable[Iterable[int]]
        :param num_vars: The number of variables. If omitted, the largest
            variable in the clauses is used.
        :type num_vars: Optional[int]
        :rtype: Formula
        """
        built = tuple(Clause.from_ints(clause) for clause in clauses)
        if num_vars is None:
            num_vars = max((clause.max_var() for clause in built), default=0)
        return cls(num_vars, built)

    def variables(self) -> list[Variable]:
        """Return all variables occurring in some clause, in ascending order."""
        return sorted({lit.var for clause in self.clauses for lit in clause.literals})

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __str__(self) -> str:
        if not self.clauses:
            return "⊤"
        return " ∧ ".join(f"({clause})" for clause in self.clauses)


@dataclass(frozen=True)
class Model:
    """
    A total assignment of truth values to the variables ``1..num_vars``.

    ``values[k - 1]`` is the value of variable ``k``.
    """

    values: tuple[bool, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(bool(value) for value in self.values))

    @classmethod
    def from_literals(cls, literals: Iterable[int], num_vars: int) -> Model:
        """
        Build a model from the signed literals that are true in it.

        :param literals: Signed DIMACS literals
        :type literals: Iterable[int]
        :param num_vars: The number of variables
        :type num_vars: int
        :raises ValueError: If a variable is missing, repeated with both
            polarities or out of range
        :rtype: Model
        """
        values: list[Optional[bool]] = [None] * num_vars
        for value in literals:
            lit = Literal.from_int(value)
            if lit.var > num_vars:
                raise VariableOutOfRange(f"Variable {lit.var} exceeds {num_vars}")
            if values[lit.var - 1] is not None and values[lit.var - 1] == lit.negated:
                raise ValueError(f"Variable {lit.var} is assigned both values")
            values[lit.var - 1] = not lit.negated
        missing = [index + 1 for index, value in enumerate(values) if value is None]
        if missing:
            raise ValueError(f"Model is not total, missing variable(s) {missing}")
        return cls(tuple(bool(value) for value in values))

    @property
    def num_vars(self) -> int:
        return len(self.values)

    def value(self, var: Variable) -> bool:
        """
        Return the value of ``var``.

        :raises VariableOutOfRange: If ``var`` is not in ``1..num_vars``
        """
        if not 1 <= var <= len(self.values):
            raise VariableOutOfRange(f"Variable {var} is not assigned by the model")
        return self.values[var - 1]

    def __getitem__(self, var: Variable) -> bool:
        return self.value(var)

    def satisfies(self, lit: Literal) -> bool:
        """Check if ``lit`` is true in the model."""
        return self.value(lit.var) != lit.negated

    def flipped(self, var: Variable) -> Model:
        """Return a copy with the value of ``var`` inverted."""
        values = list(self.values)
        values[var - 1] = not self.value(var)
        return Model(tuple(values))

    def to_literals(self) -> list[int]:
        """Return the model as signed DIMACS literals, one per variable."""
        return [var if value else -var for var, value in enumerate(self.values, start=1)]


class Status(Enum):
    SATISFIABLE = "SATISFIABLE"
    UNSATISFIABLE = "UNSATISFIABLE"
    UNKNOWN = "UNKNOWN"


class UnknownReason(Enum):
    FLIP_BUDGET_EXHAUSTED = "FlipBudgetExhausted"
    RESOURCE_LIMIT_EXCEEDED = "ResourceLimitExceeded"


@dataclass(frozen=True)
class Verdict:
    """
    The answer of a solver.

    A satisfiable verdict carries a model, if the solver constructs one. An
    unknown verdict carries the reason why the solver gave up. Unknown never
    means unsatisfiable.
    """

    status: Status
    model: Optional[Model] = None
    reason: Optional[UnknownReason] = None

    @classmethod
    def satisfiable(cls, model: Optional[Model] = None) -> Verdict:
        return cls(Status.SATISFIABLE, model=model)

    @classmethod
    def unsatisfiable(cls) -> Verdict:
        return cls(Status.UNSATISFIABLE)

    @classmethod
    def unknown(cls, reason: UnknownReason) -> Verdict:
        return cls(Status.UNKNOWN, reason=reason)

    @property
    def is_satisfiable(self) -> bool:
        return self.status is Status.SATISFIABLE

    @property
    def is_unsatisfiable(self) -> bool:
        return self.status is Status.UNSATISFIABLE

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN


def eval_clause(clause: Clause, model: Model) -> bool:
    """
    Evaluate a clause. The empty clause is false.

    :raises VariableOutOfRange: If the clause uses a variable the model does
        not assign
    """
    if clause.max_var() > model.num_vars:
        raise VariableOutOfRange(
            f"Clause {clause} uses variable {clause.max_var()}, "
            f"the model only assigns {model.num_vars}"
        )
    values = model.values
    return any(values[lit.var - 1] != lit.negated for lit in clause.literals)


def eval_formula(formula: Formula, model: Model) -> bool:
    """Evaluate a formula. The empty formula is true."""
    return all(eval_clause(clause, model) for clause in formula.clauses)


def count_satisfied(formula: Formula, model: Model) -> int:
    """Return the number of clauses of ``formula`` that are true in ``model``."""
    return sum(1 for clause in formula.clauses if eval_clause(clause, model))
