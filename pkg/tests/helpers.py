"""Builders shared by the tests."""

import random

from cnfsat.cnf import Formula


def random_formula(
    rng: random.Random, max_vars: int = 10, max_clauses: int = 40, max_width: int = 3
) -> Formula:
    """A random formula with up to ``max_clauses`` clauses of width 1 to ``max_width``."""
    num_vars = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        width = rng.randint(1, max_width)
        clauses.append([rng.choice((1, -1)) * rng.randint(1, num_vars) for _ in range(width)])
    return Formula.from_lists(clauses, num_vars)


def pigeonhole(pigeons: int, holes: int) -> Formula:
    """Every pigeon gets a hole, no hole gets two pigeons. Unsatisfiable for pigeons > holes."""

    def var(pigeon: int, hole: int) -> int:
        return (pigeon - 1) * holes + hole

    clauses = [[var(p, h) for h in range(1, holes + 1)] for p in range(1, pigeons + 1)]
    for hole in range(1, holes + 1):
        for first in range(1, pigeons + 1):
            for second in range(first + 1, pigeons + 1):
                clauses.append([-var(first, hole), -var(second, hole)])
    return Formula.from_lists(clauses, pigeons * holes)
