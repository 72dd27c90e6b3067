"""
The wedding seating problem.

``M`` guests are seated at ``N`` tables. Every pair of guests is either
Friends, who have to share a table, Enemies, who must not share a table, or
Indifferent. Tables have no capacity.

An instance is translated into CNF with the variable ``X(i, n)``, "guest ``i``
sits at table ``n``", numbered ``(i - 1) * N + n``. The formula is the
conjunction of

    (a) X(i, 1) ∨ ... ∨ X(i, N)               for every guest i
    (b) ¬X(i, k) ∨ ¬X(i, n)                    for every guest i and k < n
    (c) ¬X(i, n) ∨ X(j, n), ¬X(j, n) ∨ X(i, n)  for every Friends pair and table n
    (d) ¬X(i, n) ∨ ¬X(j, n)                    for every Enemies pair and table n

in this order. Instances are stored as text::

    seating M N
    1 2 F
    3 5 E

with one line per pair that is not Indifferent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional

from .cnf import Clause, Formula, Literal, Model
from .rng import DeterministicRNG


class InvalidProbability(ValueError):
    pass


class NotAFunction(ValueError):
    """A model seats some guest at no table or at several tables."""


class MalformedInstance(ValueError):
    pass


class Relation(Enum):
    FRIENDS = "F"
    ENEMIES = "E"
    INDIFFERENT = "I"


Pair = tuple[int, int]


def guest_pairs(num_guests: int) -> list[Pair]:
    """All unordered pairs ``(i, j)``, ``i < j``, in lexicographic order."""
    return list(combinations(range(1, num_guests + 1), 2))


@dataclass(frozen=True)
class SeatingInstance:
    """
    A seating problem.

    :param num_guests: The number of guests ``M``
    :type num_guests: int
    :param num_tables: The number of tables ``N``
    :type num_tables: int
    :param relations: The relation of every pair ``(i, j)`` with ``i < j``.
        Pairs that are missing are Indifferent.
    :type relations: dict[tuple[int, int], Relation]
    """

    num_guests: int
    num_tables: int
    relations: dict[Pair, Relation] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.num_guests < 1 or self.num_tables < 1:
            raise MalformedInstance("There has to be at least one guest and one table")
        completed: dict[Pair, Relation] = {}
        for (i, j), relation in self.relations.items():
            if not 1 <= i < j <= self.num_guests:
                raise MalformedInstance(f"Invalid pair ({i}, {j}) for {self.num_guests} guests")
            completed[(i, j)] = relation
        for pair in guest_pairs(self.num_guests):
            completed.setdefault(pair, Relation.INDIFFERENT)
        object.__setattr__(self, "relations", dict(sorted(completed.items())))

    @classmethod
    def from_pairs(
        cls,
        num_guests: int,
        num_tables: int,
        friends: Iterable[Pair] = (),
        enemies: Iterable[Pair] = (),
    ) -> SeatingInstance:
        """Create an instance from lists of Friends and Enemies pairs, in any order."""
        relations: dict[Pair, Relation] = {}
        for relation, pairs in ((Relation.FRIENDS, friends), (Relation.ENEMIES, enemies)):
            for i, j in pairs:
                relations[(min(i, j), max(i, j))] = relation
        return cls(num_guests, num_tables, relations)

    def relation(self, i: int, j: int) -> Relation:
        """Return the relation between guests ``i`` and ``j``, in any order."""
        return self.relations[(min(i, j), max(i, j))]

    def pairs_with(self, relation: Relation) -> list[Pair]:
        """All pairs with the given relation, in lexicographic order."""
        return [pair for pair, rel in self.relations.items() if rel is relation]

    @property
    def friends(self) -> list[Pair]:
        return self.pairs_with(Relation.FRIENDS)

    @property
    def enemies(self) -> list[Pair]:
        return self.pairs_with(Relation.ENEMIES)


def relation_counts(inst: SeatingInstance) -> tuple[int, int]:
    """Return the number of Friends and Enemies pairs ``(F, E)``."""
    return len(inst.friends), len(inst.enemies)


@dataclass(frozen=True)
class SeatingChart:
    """
    An assignment of every guest to exactly one table.

    ``tables[i - 1]`` is the table of guest ``i``.
    """

    tables: tuple[int, ...]

    def table_of(self, guest: int) -> int:
        return self.tables[guest - 1]

    def __str__(self) -> str:
        return "\n".join(
            f"guest {guest}: table {table}" for guest, table in enumerate(self.tables, start=1)
        )


@dataclass(frozen=True)
class EncodingMap:
    """
    The numbering of the variables ``X(i, n)``.

    ``var_of(i, n) = (i - 1) * num_tables + n``, which covers ``1..M*N``.
    """

    num_guests: int
    num_tables: int

    @property
    def num_vars(self) -> int:
        return self.num_guests * self.num_tables

    def var_of(self, guest: int, table: int) -> int:
        if not (1 <= guest <= self.num_guests and 1 <= table <= self.num_tables):
            raise ValueError(f"No variable for guest {guest} at table {table}")
        return (guest - 1) * self.num_tables + table

    def seat_of(self, var: int) -> tuple[int, int]:
        """Return ``(guest, table)`` of a variable, the inverse of :py:meth:`var_of`."""
        if not 1 <= var <= self.num_vars:
            raise ValueError(f"Variable {var} is not part of the encoding")
        guest, table = divmod(var - 1, self.num_tables)
        return guest + 1, table + 1

    def model_of(self, chart: SeatingChart) -> Model:
        """The model in which exactly the variables ``X(i, table_of(i))`` are true."""
        values = [False] * self.num_vars
        for guest, table in enumerate(chart.tables, start=1):
            values[self.var_of(guest, table) - 1] = True
        return Model(tuple(values))

    def describe(self) -> list[str]:
        """One human readable line per variable, e.g. for DIMACS comments."""
        lines = []
        for var in range(1, self.num_vars + 1):
            guest, table = self.seat_of(var)
            lines.append(f"var {var} = X({guest},{table}): guest {guest} at table {table}")
        return lines


def generate_instance(
    num_guests: int, num_tables: int, f: float, e: float, seed: Optional[int] = None
) -> SeatingInstance:
    """
    Draw a random instance.

    For every pair, in lexicographic order, one uniform ``u`` in ``[0, 1)`` is
    drawn: ``u < f`` makes the pair Friends, ``f <= u < f + e`` Enemies, and
    the pair is Indifferent otherwise.

    :param num_guests: ``M``
    :type num_guests: int
    :param num_tables: ``N``
    :type num_tables: int
    :param f: Probability of Friends
    :type f: float
    :param e: Probability of Enemies
    :type e: float
    :param seed: Seed of the generator
    :type seed: Optional[int]
    :raises InvalidProbability: If ``f`` or ``e`` is negative or ``f + e > 1``
    :rtype: SeatingInstance
    """
    if f < 0 or e < 0 or f + e > 1 + 1e-12:
        raise InvalidProbability(f"Need f, e >= 0 and f + e <= 1, got f={f}, e={e}")
    rng = DeterministicRNG(seed)
    relations: dict[Pair, Relation] = {}
    for pair in guest_pairs(num_guests):
        draw = rng.random()
        if draw < f:
            relations[pair] = Relation.FRIENDS
        elif draw < f + e:
            relations[pair] = Relation.ENEMIES
        else:
            relations[pair] = Relation.INDIFFERENT
    return SeatingInstance(num_guests, num_tables, relations)


def encode(inst: SeatingInstance) -> tuple[Formula, EncodingMap]:
    """
    Translate an instance into CNF.

    The clauses come in the order (a), (b), (c), (d) of the module
    documentation, giving ``M + M*C(N,2) + 2*F*N + E*N`` clauses over ``M*N``
    variables.

    :param inst: The instance
    :type inst: SeatingInstance
    :rtype: tuple[Formula, EncodingMap]
    """
    encoding = EncodingMap(inst.num_guests, inst.num_tables)
    guests = range(1, inst.num_guests + 1)
    tables = range(1, inst.num_tables + 1)

    def pos(guest: int, table: int) -> Literal:
        return Literal(encoding.var_of(guest, table))

    def neg(guest: int, table: int) -> Literal:
        return Literal(encoding.var_of(guest, table), True)

    clauses: list[Clause] = []
    for guest in guests:
        clauses.append(Clause(tuple(pos(guest, table) for table in tables)))
    for guest in guests:
        for first, second in combinations(tables, 2):
            clauses.append(Clause((neg(guest, first), neg(guest, second))))
    for i, j in inst.friends:
        for table in tables:
            clauses.append(Clause((neg(i, table), pos(j, table))))
            clauses.append(Clause((neg(j, table), pos(i, table))))
    for i, j in inst.enemies:
        for table in tables:
            clauses.append(Clause((neg(i, table), neg(j, table))))

    return Formula(encoding.num_vars, tuple(clauses)), encoding


def decode(model: Model, encoding: EncodingMap) -> SeatingChart:
    """
    Read the seating chart off a model.

    :param model: A model of the encoded formula
    :type model: Model
    :param encoding: The variable numbering used by :py:func:`encode`
    :type encoding: EncodingMap
    :raises NotAFunction: If a guest is seated at zero or several tables
    :rtype: SeatingChart
    """
    tables: list[int] = []
    for guest in range(1, encoding.num_guests + 1):
        seated = [
            table
            for table in range(1, encoding.num_tables + 1)
            if model.value(encoding.var_of(guest, table))
        ]
        if len(seated) != 1:
            raise NotAFunction(f"Guest {guest} is seated at tables {seated}")
        tables.append(seated[0])
    return SeatingChart(tuple(tables))


def chart_respects(inst: SeatingInstance, chart: SeatingChart) -> bool:
    """Check that all Friends share a table and no Enemies do."""
    return all(chart.table_of(i) == chart.table_of(j) for i, j in inst.friends) and all(
        chart.table_of(i) != chart.table_of(j) for i, j in inst.enemies
    )


def serialize_instance(inst: SeatingInstance) -> str:
    """Write an instance in the text format of the module documentation."""
    lines = [f"seating {inst.num_guests} {inst.num_tables}"]
    for (i, j), relation in inst.relations.items():
        if relation is not Relation.INDIFFERENT:
            lines.append(f"{i} {j} {relation.value}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> SeatingInstance:
    """
    Read an instance in the text format of the module documentation.

    Blank lines and lines starting with ``#`` are ignored.

    :raises MalformedInstance: If the header or a pair line is invalid, or a
        pair is listed twice
    :rtype: SeatingInstance
    """
    header: Optional[tuple[int, int]] = None
    relations: dict[Pair, Relation] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if header is None:
            if len(parts) != 3 or parts[0] != "seating":
                raise MalformedInstance(f"line {number}: expected 'seating M N'")
            header = (_parse_int(parts[1], number), _parse_int(parts[2], number))
            continue
        if len(parts) != 3 or parts[2] not in ("F", "E", "I"):
            raise MalformedInstance(f"line {number}: expected 'i j F|E'")
        i, j = sorted((_parse_int(parts[0], number), _parse_int(parts[1], number)))
        relation = Relation(parts[2])
        if (i, j) in relations:
            raise MalformedInstance(f"line {number}: pair ({i}, {j}) listed twice")
        relations[(i, j)] = relation
    if header is None:
        raise MalformedInstance("Missing 'seating M N' header")
    return SeatingInstance(header[0], header[1], relations)


def _parse_int(token: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise MalformedInstance(f"line {line_number}: {token!r} is not a number") from exc
