"""Exception hierarchy shared by all harmconvex modules."""

from __future__ import annotations


class HarmconvexError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HarmconvexError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EvaluationError(HarmconvexError, ArithmeticError):
    """A sampled function value was not finite.

    ``point`` holds the offending abscissa when known.
    """

    def __init__(self, message: str, point: float | None = None):
        super().__init__(message)
        self.point = point


class AccuracyError(HarmconvexError, ArithmeticError):
    """A numerical routine exhausted its budget before reaching tolerance.

    Carries the best available estimate so callers can inspect how far the
    computation got.
    """

    def __init__(self, message: str, estimate: float, error_estimate: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate
