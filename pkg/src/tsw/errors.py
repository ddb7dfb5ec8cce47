"""Exception types shared across the package."""


class TswError(Exception):
    """Base class for every error raised by this package."""


class ParseError(TswError):
    """Malformed formula text. Carries the character offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ValidationError(TswError):
    """An argument violates an operation's stated precondition."""


class CapExceededError(TswError):
    """An operation would exceed its variable-count or size cap."""


class InternalInvariantError(TswError):
    """A guaranteed property failed to hold. Indicates a bug, not bad input."""
