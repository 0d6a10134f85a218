"""
Fraction-free Gaussian elimination (Bareiss) over the rationals.

Rows are scaled to integers first, so every intermediate entry stays an
integer and each division by the previous pivot is exact.
"""

import logging
from fractions import Fraction
from math import lcm

from shapql.core.exceptions import SingularSystemError
from shapql.modules.hardness_lab.models import LinearSystem

logger = logging.getLogger(__name__)


def _integer_rows(system: LinearSystem) -> list[list[int]]:
    rows = []
    for row, value in zip(system.matrix, system.rhs):
        entries = list(row) + [value]
        scale = lcm(*(entry.denominator for entry in entries))
        rows.append([int(entry * scale) for entry in entries])
    return rows


def solve_linear_exact(system: LinearSystem) -> list[Fraction]:
    size = system.size
    rows = _integer_rows(system)
    previous = 1

    for k in range(size):
        pivot = next((r for r in range(k, size) if rows[r][k] != 0), None)
        if pivot is None:
            raise SingularSystemError(f"No pivot in column {k}", size=size)
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]

        for i in range(k + 1, size):
            for j in range(k + 1, size + 1):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // previous
            rows[i][k] = 0
        previous = rows[k][k]

    solution = [Fraction(0)] * size
    for i in reversed(range(size)):
        acc = Fraction(rows[i][size])
        for j in range(i + 1, size):
            acc -= rows[i][j] * solution[j]
        solution[i] = acc / rows[i][i]

    logger.debug(f"Solved a {size}x{size} system")
    return solution
