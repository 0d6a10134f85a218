"""
Centralized enums and controlled values for the package.

Single source of truth for dialects, oracle verdicts, probability regimes
and method tags. Values double as CLI choices and JSON output strings.
"""

from enum import Enum


# =============================================================================
# KNOWLEDGE BASE ENUMS
# =============================================================================


class Dialect(str, Enum):
    """Description-logic dialect of a knowledge base."""

    ELHI_BOT = "elhi-bot"
    DL_LITE = "dl-lite"


# =============================================================================
# REASONER ENUMS
# =============================================================================


class Verdict(str, Enum):
    """Three-valued entailment answer."""

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Consistency(str, Enum):
    """Three-valued consistency answer."""

    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    UNKNOWN = "unknown"


# =============================================================================
# SHAPLEY / PQE ENUMS
# =============================================================================


class Method(str, Enum):
    """Shapley computation method requested on the command line."""

    EXACT = "exact"
    PERMUTATION = "permutation"
    SUPPORTS = "supports"
    SAMPLE = "sample"
    DLLITE = "dllite"


class MethodTag(str, Enum):
    """Method actually used for a result."""

    SUBSET = "subset"
    PERMUTATION = "permutation"
    SUPPORTS = "supports"
    DLLITE_CLOSED_FORM = "dllite-closed-form"
    SAMPLE_ADDITIVE = "sample-additive"
    SAMPLE_MULTIPLICATIVE = "sample-multiplicative"


class Regime(str, Enum):
    """Restriction on the probability image of a probabilistic ABox."""

    HALF = "half"
    HALF_ONE = "half-one"
    SINGLE_PROPER = "single-proper"
    ANY = "any"


def get_enum_values(enum_class: type[Enum]) -> list[str]:
    """Return the string values of an enum, in declaration order."""
    return [member.value for member in enum_class]
