"""
Tests for exact linear solving.
"""

from fractions import Fraction

import pytest

from shapql.core.exceptions import SingularSystemError, ValidationError
from shapql.modules.hardness_lab.linear import solve_linear_exact
from shapql.modules.hardness_lab.models import LinearSystem


class TestSolveLinearExact:
    def test_integer_system(self):
        system = LinearSystem.of([[2, 1], [1, 3]], [3, 5])
        assert solve_linear_exact(system) == [Fraction(4, 5), Fraction(7, 5)]

    def test_rational_entries(self):
        system = LinearSystem.of([[Fraction(1, 2), Fraction(1, 3)], [1, 1]], [1, 2])
        assert solve_linear_exact(system) == [2, 0]

    def test_row_swap(self):
        assert solve_linear_exact(LinearSystem.of([[0, 1], [1, 0]], [3, 4])) == [4, 3]

    def test_singular(self):
        with pytest.raises(SingularSystemError) as info:
            solve_linear_exact(LinearSystem.of([[1, 2], [2, 4]], [1, 2]))
        assert info.value.exit_code == 5

    def test_not_square(self):
        with pytest.raises(ValidationError, match="square"):
            LinearSystem.of([[1, 2]], [1])
