"""Exception types shared across the package.

Every error raised by crisissent derives from CrisisSentError so batch
drivers (and the CLI) can map "bad data / bad config" to a single exit
class while programming errors still surface as ordinary exceptions.
"""


class CrisisSentError(Exception):
    """Base class for all crisissent data and configuration errors."""


class ParseError(CrisisSentError):
    """A record in an input file is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FormatError(ParseError):
    """A value inside an otherwise well-formed record is invalid."""


class IntegrityError(CrisisSentError):
    """Duplicate identifiers or undeclared record owners."""


class UnresolvedReferenceError(CrisisSentError):
    """A record points at an id that does not exist; names both ends."""


class AlignmentError(CrisisSentError):
    """Translation segments do not line up 1:1 with the source document."""


class FitError(CrisisSentError):
    """A model was asked to fit on empty or unusable input."""


class LayoutError(CrisisSentError):
    """Feature vector layout does not match the fitted layout."""


class DegenerateDataError(CrisisSentError):
    """Training data lacks the variation the operation requires."""


class NumericError(CrisisSentError):
    """Non-finite values where finite numbers are required."""


class ConfigError(CrisisSentError):
    """Invalid or inconsistent run configuration."""
