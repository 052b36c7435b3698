"""Exception hierarchy shared by every module."""

from __future__ import annotations

from fractions import Fraction


class RumError(Exception):
    """Base class for all package errors."""


class DomainError(RumError, ValueError):
    """An argument lies outside the operation's domain."""


class ParseError(RumError, ValueError):
    """Malformed input file or flag."""


class NotRationalizableError(DomainError):
    """A Block-Marschak polynomial is negative.

    Attributes:
        x: index of the alternative.
        menu: bitmask of the menu.
        value: the offending (negative) value.
    """

    def __init__(self, x: int, menu: int, value: Fraction, message: str | None = None):
        self.x = x
        self.menu = menu
        self.value = value
        super().__init__(message or f"q(x={x}, A={menu:#b}) = {value} < 0")


class CapExceededError(RumError):
    """Refusal: the input exceeds an enumeration or size cap."""
