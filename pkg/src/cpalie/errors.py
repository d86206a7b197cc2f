"""Exceptions shared across modules."""

from __future__ import annotations


class PreconditionError(ValueError):
    """An operation was called on input outside its documented domain."""


class BudgetExceeded(RuntimeError):
    """A configured resource budget ran out before the computation finished.

    ``spent`` describes what was consumed (for example S-pairs processed).
    """

    def __init__(self, message: str, **spent: int | float):
        super().__init__(message)
        self.spent = spent
