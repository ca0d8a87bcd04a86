"""Exception types shared across the package."""

from __future__ import annotations


class MonogenError(Exception):
    """Base class for all package errors."""


class InvalidInput(MonogenError, ValueError):
    """A precondition on an argument was violated."""


class NotCubeFree(InvalidInput):
    pass


class CapExceeded(MonogenError, OverflowError):
    """A size cap (modulus width, scan span, degree) was exceeded."""


class RangeTooLarge(CapExceeded):
    pass


class ImplementationFault(MonogenError, AssertionError):
    """An internal cross-check failed. Never expected on valid input."""
