"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` and the CLI exit
status it maps to (1 for semantic errors, 2 for I/O or format errors).
"""
from __future__ import annotations


class ConfalgError(Exception):
    code = "ERROR"
    exit_code = 1


class DivisionByZero(ConfalgError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


class UnknownValue(ConfalgError, ValueError):
    code = "UNKNOWN_VALUE"


class LengthMismatch(ConfalgError, ValueError):
    code = "LENGTH_MISMATCH"


class DimensionMismatch(LengthMismatch):
    code = "DIMENSION_MISMATCH"


class KindMismatch(ConfalgError, TypeError):
    code = "KIND_MISMATCH"


class IndexOutOfRange(ConfalgError, IndexError):
    code = "INDEX_OUT_OF_RANGE"


class ScheduleError(ConfalgError, ValueError):
    code = "SCHEDULE_ERROR"


class EmptyHistory(ConfalgError, LookupError):
    code = "EMPTY_HISTORY"


class SchemaMismatch(ConfalgError, ValueError):
    code = "SCHEMA_MISMATCH"


class NotInvertible(ConfalgError, ArithmeticError):
    """No strict inverse exists.

    ``components`` holds the failing component indices of a multi-parameter
    operator; ``entry`` is the journal index when raised during rollback.
    """

    code = "NOT_INVERTIBLE"

    def __init__(self, message: str, components=(), entry: int | None = None):
        super().__init__(message)
        self.components = frozenset(components)
        self.entry = entry


class FormatError(ConfalgError, ValueError):
    code = "FORMAT_ERROR"
    exit_code = 2
