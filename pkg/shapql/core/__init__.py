from .config import Environment, Settings, get_settings, settings
from .exceptions import (
    DialectError,
    FixtureError,
    IncompleteEnumerationError,
    InputError,
    NameClashError,
    OracleUnknownError,
    ParseError,
    ReductionError,
    RegimeViolationError,
    ShapqlError,
    SingularSystemError,
    SizeLimitError,
    UnsupportedInstanceError,
    ValidationError,
)

__all__ = [
    "Environment",
    "Settings",
    "get_settings",
    "settings",
    "ShapqlError",
    "InputError",
    "ParseError",
    "DialectError",
    "ValidationError",
    "RegimeViolationError",
    "FixtureError",
    "NameClashError",
    "UnsupportedInstanceError",
    "OracleUnknownError",
    "SizeLimitError",
    "IncompleteEnumerationError",
    "SingularSystemError",
    "ReductionError",
]
