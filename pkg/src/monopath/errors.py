"""Exception types shared across the package."""

from __future__ import annotations


class MonopathError(Exception):
    """Base class for errors raised by monopath."""


class PreconditionError(MonopathError, ValueError):
    """An operation was called outside its documented domain."""


class ConvergenceError(MonopathError, RuntimeError):
    """An iterative routine hit its iteration cap.

    The best bracket found so far is kept on ``bracket``.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class ConfigError(MonopathError, ValueError):
    """Invalid scenario configuration."""
