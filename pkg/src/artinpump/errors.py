"""Exception hierarchy shared by the library and the CLI."""


class ArtinError(Exception):
    """Base class for every domain error raised by artinpump."""


class SemiringError(ArtinError, ValueError):
    """Bad semiring descriptor, failed axiom, or bad scalar literal."""


class DimensionError(ArtinError, ValueError):
    pass


class UndecidableError(ArtinError):
    """The semiring's capability tier has no decision procedure for the request."""


class BudgetExceeded(ArtinError):
    pass


class NotInSupport(ArtinError):
    pass


class NoWitness(ArtinError):
    pass


class WordTooShort(ArtinError):
    pass


class FormatError(ArtinError, ValueError):
    """Malformed automaton file; carries an optional line/column position."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
