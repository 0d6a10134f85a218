"""
Input validation utilities shared by the parser, the engines and the CLI.

This module provides:
- Identifier patterns for concept names, roles and individuals
- Exact rational parsing ("p/q" strings, never decimals)
- Range validators for probabilities and approximation parameters
- Annotated types for pydantic schemas
"""

import re
from fractions import Fraction
from typing import Annotated, Any

from pydantic import BeforeValidator


# =============================================================================
# IDENTIFIER PATTERNS
# =============================================================================


class Identifiers:
    """Lexical shapes of names in knowledge-base text."""

    CONCEPT = r"[A-Z][A-Za-z0-9_]*"
    # '~' appears in copies made by the bipartite encoding
    LOWER = r"[a-z][A-Za-z0-9_~]*"
    VERTEX = r"[A-Za-z0-9_]+"

    KEYWORDS = frozenset(
        {
            "abox",
            "and",
            "axiom",
            "bot",
            "dialect",
            "endo",
            "exists",
            "exo",
            "inv",
            "not",
            "reach",
            "sub",
            "tbox",
            "top",
        }
    )


def is_concept_name(value: str) -> bool:
    return re.fullmatch(Identifiers.CONCEPT, value) is not None


def is_lower_name(value: str) -> bool:
    return (
        re.fullmatch(Identifiers.LOWER, value) is not None
        and value not in Identifiers.KEYWORDS
    )


# =============================================================================
# RATIONALS
# =============================================================================


def parse_rational(value: Any) -> Fraction:
    """Parse ``p/q`` or an integer into an exact Fraction. Decimals are refused."""
    if isinstance(value, Fraction):
        return value

    if isinstance(value, bool):
        raise ValueError("Rational must not be a boolean")

    if isinstance(value, int):
        return Fraction(value)

    if not isinstance(value, str):
        raise ValueError("Rational must be written as p/q")

    text = value.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise ValueError(f"Rational must be written as p/q, got {value!r}")

    numerator, _, denominator = text.partition("/")
    if denominator and int(denominator) == 0:
        raise ValueError("Rational has a zero denominator")

    return Fraction(int(numerator), int(denominator) if denominator else 1)


def format_rational(value: Fraction) -> str:
    """Render as ``num/den``, always with a denominator."""
    return f"{value.numerator}/{value.denominator}"


# =============================================================================
# RANGE VALIDATORS
# =============================================================================


def validate_probability(value: Any) -> Fraction:
    """Probability of a tuple-independent fact: a rational in (0, 1]."""
    prob = parse_rational(value)

    if prob <= 0 or prob > 1:
        raise ValueError(f"Probability {format_rational(prob)} outside (0,1]")

    return prob


def validate_open_unit(value: Any, field_name: str = "Value") -> Fraction:
    """Approximation parameters eps and delta live in (0, 1)."""
    number = parse_rational(value)

    if number <= 0 or number >= 1:
        raise ValueError(f"{field_name} must lie strictly between 0 and 1")

    return number


def validate_nonneg_int(value: int | None) -> int | None:
    """Validate that an integer is non-negative."""
    if value is None:
        return None

    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError("Value must be an integer")

    if value < 0:
        raise ValueError("Value must be a non-negative integer")

    return value


# =============================================================================
# PYDANTIC ANNOTATED TYPES
# =============================================================================

RationalValue = Annotated[Fraction, BeforeValidator(parse_rational)]
ProbabilityValue = Annotated[Fraction, BeforeValidator(validate_probability)]
