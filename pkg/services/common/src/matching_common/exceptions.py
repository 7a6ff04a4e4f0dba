"""Shared exceptions for all services."""


class InstanceValidationError(Exception):
    """Raised when an instance or input document is structurally invalid."""

    def __init__(
        self, reason: str, line: int | None = None, cause: Exception | None = None
    ):
        self.reason = reason
        self.line = line
        self.cause = cause
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"{reason}{where}")


class UnsupportedInputError(Exception):
    """Raised when an algorithm receives an input outside its domain."""

    def __init__(self, operation: str, reason: str, cause: Exception | None = None):
        self.operation = operation
        self.reason = reason
        self.cause = cause
        super().__init__(f"'{operation}' does not support this input: {reason}")


class GuardExceededError(Exception):
    """Raised when an input exceeds a configured size guard."""

    def __init__(
        self, guard: str, limit: int, actual: int, cause: Exception | None = None
    ):
        self.guard = guard
        self.limit = limit
        self.actual = actual
        self.cause = cause
        super().__init__(f"Guard '{guard}' exceeded: {actual} > {limit}")
