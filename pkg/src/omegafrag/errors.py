"""Exception types shared across the package."""


class OmegaFragError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OmegaFragError):
    """Malformed input text. ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


class UndeclaredLetterError(ParseError):
    """A letter that is not part of the declared alphabet."""


class AlphabetMismatchError(OmegaFragError):
    """Two objects that must share an alphabet do not."""


class ResourceLimitError(OmegaFragError):
    """A monoid or search space grew beyond its configured bound."""


class PreconditionError(OmegaFragError):
    """An operation was called on input outside its domain."""
