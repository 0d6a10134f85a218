from typing import Any, Optional


class ShapqlError(Exception):
    def __init__(
        self,
        message: str = "An unexpected error occurred",
        exit_code: int = 1,
        details: Optional[Any] = None,
    ):
        self.message = message
        self.exit_code = exit_code
        self.details = details
        super().__init__(self.message)

    def to_dict(self) -> dict:
        result = {"error": self.message, "exit_code": self.exit_code}
        if self.details:
            result["details"] = self.details
        return result


class InputError(ShapqlError):
    """Malformed or inadmissible user input (exit 2)."""

    def __init__(self, message: str = "Invalid input", details: Optional[Any] = None):
        super().__init__(message=message, exit_code=2, details=details)


class ParseError(InputError):
    """Syntax error with the offending position (exit 2)."""

    def __init__(
        self,
        message: str = "Syntax error",
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        details = None
        if line is not None:
            details = {"line": line, "column": column}
            message = f"{message} (line {line}, column {column})"
        super().__init__(message=message, details=details)


class DialectError(InputError):
    """Axiom outside the declared description-logic dialect (exit 2)."""

    def __init__(
        self,
        message: str = "Axiom not allowed in dialect",
        axiom: Optional[str] = None,
    ):
        details = {"axiom": axiom} if axiom else None
        super().__init__(message=message, details=details)


class ValidationError(InputError):
    """Validation error on a named field (exit 2)."""

    def __init__(
        self,
        message: str = "Validation error",
        field: Optional[str] = None,
        errors: Optional[list] = None,
    ):
        details = {}
        if field:
            details["field"] = field
        if errors:
            details["errors"] = errors
        super().__init__(message=message, details=details if details else None)


class RegimeViolationError(InputError):
    """Probability image outside the requested PQE regime (exit 2)."""

    def __init__(
        self,
        message: str = "Probabilities violate the requested regime",
        regime: Optional[str] = None,
        image: Optional[list[str]] = None,
    ):
        details = {}
        if regime:
            details["regime"] = regime
        if image is not None:
            details["image"] = image
        super().__init__(message=message, details=details if details else None)


class FixtureError(InputError):
    """Path fixture violates its structural invariants (exit 2)."""


class NameClashError(InputError):
    """A name that must be fresh already occurs in the input (exit 2)."""

    def __init__(self, message: str = "Name is not fresh", name: Optional[str] = None):
        details = {"name": name} if name else None
        super().__init__(message=message, details=details)


class UnsupportedInstanceError(InputError):
    """Instance outside the preconditions of a closed-form method (exit 2)."""


class OracleUnknownError(ShapqlError):
    """Chase cutoff left an entailment undecided (exit 3)."""

    def __init__(
        self,
        message: str = "Entailment undecided within the chase depth; "
        "raise --chase-depth",
        depth_limit: Optional[int] = None,
    ):
        details = {"depth_limit": depth_limit} if depth_limit is not None else None
        super().__init__(message=message, exit_code=3, details=details)


class SizeLimitError(ShapqlError):
    """Instance exceeds a configured size limit (exit 4)."""

    def __init__(
        self,
        message: str = "Size limit exceeded",
        limit: Optional[int] = None,
        actual: Optional[int] = None,
    ):
        details = None
        if limit is not None:
            details = {"limit": limit, "actual": actual}
        super().__init__(message=message, exit_code=4, details=details)


class IncompleteEnumerationError(ShapqlError):
    """Support enumeration stopped at its cap with an open frontier (exit 4)."""

    def __init__(
        self,
        message: str = "Minimal-support enumeration is incomplete",
        cap: Optional[int] = None,
    ):
        details = {"cap": cap} if cap is not None else None
        super().__init__(message=message, exit_code=4, details=details)


class SingularSystemError(ShapqlError):
    """Linear system has no unique solution (exit 5)."""

    def __init__(self, message: str = "Singular linear system", size: Optional[int] = None):
        details = {"size": size} if size is not None else None
        super().__init__(message=message, exit_code=5, details=details)


class ReductionError(ShapqlError):
    """Reduction pipeline produced a non-integer or negative count (exit 5)."""

    def __init__(self, message: str = "Reduction produced an invalid count", details: Optional[Any] = None):
        super().__init__(message=message, exit_code=5, details=details)
