"""Custom exceptions for lpreg."""

from __future__ import annotations

from typing import Any


class LpRegError(Exception):
    """Base exception for all lpreg errors."""

    def __init__(self, message: str, details: dict | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details or {}


class DimensionError(LpRegError):
    """Array length or shape does not match the operator or signal."""

    pass


class SelectionError(LpRegError):
    """Invalid frequency selection (duplicate or out of range)."""

    pass


class InvalidSizeError(LpRegError):
    """Grid, patch or image size outside the accepted range."""

    pass


class InvalidInputError(LpRegError):
    """Input violates a documented precondition."""

    pass


class SingularSystemError(LpRegError):
    """The normal matrix of the u-update is singular or nearly so."""

    pass


class BracketError(LpRegError):
    """Root-finder bracket does not enclose a sign change."""

    pass


class ConvergenceError(LpRegError):
    """Iterative method exhausted its iteration budget.

    Attributes:
        best: Best iterate found before giving up (scalar or array).
    """

    def __init__(self, message: str, best: Any = None, details: dict | None = None) -> None:
        super().__init__(message, details)
        self.best = best


class ConfigError(LpRegError):
    """Error in configuration."""

    pass


class ImageIOError(LpRegError):
    """Error reading or writing image and array files."""

    pass


class StageError(LpRegError):
    """A pipeline stage failed; ``details`` names the stage (and λ for sample solves)."""

    pass
