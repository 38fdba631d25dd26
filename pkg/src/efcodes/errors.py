"""Shared exception types.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific one that applies.
"""

from __future__ import annotations


class EfcodesError(Exception):
    """Base class for all errors raised by this package."""


class FieldError(EfcodesError, ValueError):
    """Invalid field construction or arithmetic request."""


class HypothesisError(EfcodesError, ValueError):
    """A theorem/proposition precondition does not hold for the given spec."""


class BudgetError(EfcodesError, RuntimeError):
    """An enumeration would exceed the configured work budget."""


class VerificationError(EfcodesError, RuntimeError):
    """A cross-check between independent computation routes disagreed."""
