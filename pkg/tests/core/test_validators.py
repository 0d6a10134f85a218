"""
Tests for rational parsing and range validation.
"""

from fractions import Fraction

import pytest

from shapql.core.validators import (
    format_rational,
    is_concept_name,
    is_lower_name,
    parse_rational,
    validate_nonneg_int,
    validate_open_unit,
    validate_probability,
)


class TestParseRational:
    """``p/q`` strings and integers only."""

    @pytest.mark.parametrize(
        "raw, expected",
        [("1/2", Fraction(1, 2)), ("3", Fraction(3)), (" 2/4 ", Fraction(1, 2)), (5, Fraction(5))],
    )
    def test_accepted_forms(self, raw, expected):
        assert parse_rational(raw) == expected

    @pytest.mark.parametrize("raw", ["0.5", "1/0", "half", True, 0.5])
    def test_rejected_forms(self, raw):
        with pytest.raises(ValueError):
            parse_rational(raw)

    def test_format_always_has_denominator(self):
        assert format_rational(Fraction(3)) == "3/1"
        assert format_rational(Fraction(14, 24)) == "7/12"


class TestRanges:
    """Probabilities live in (0,1], eps and delta in (0,1)."""

    def test_probability_one_is_allowed(self):
        assert validate_probability("1") == 1

    @pytest.mark.parametrize("raw", ["0", "3/2"])
    def test_probability_out_of_range(self, raw):
        with pytest.raises(ValueError, match="outside"):
            validate_probability(raw)

    @pytest.mark.parametrize("raw", ["0", "1"])
    def test_open_unit_excludes_ends(self, raw):
        with pytest.raises(ValueError, match="strictly between"):
            validate_open_unit(raw, "eps")

    def test_nonneg_int(self):
        assert validate_nonneg_int(None) is None
        assert validate_nonneg_int(3) == 3
        with pytest.raises(ValueError):
            validate_nonneg_int(-1)


class TestNames:
    """Lexical classes of knowledge-base names."""

    def test_concept_names_start_uppercase(self):
        assert is_concept_name("LandSea")
        assert not is_concept_name("hasIngr")

    def test_keywords_are_not_names(self):
        assert is_lower_name("a1~x1")
        assert not is_lower_name("exists")
