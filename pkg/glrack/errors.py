"""Exception hierarchy for glrack."""


class GLRackError(Exception):
    """Base class for every error raised by glrack."""


class FormatError(GLRackError):
    """Malformed text input or malformed table."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f'line {line}' if column is None else f'line {line}, column {column}'
            message = f'{where}: {message}'
        super().__init__(message)


class DomainError(GLRackError):
    """Input is well formed but mathematically invalid."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class MoveNotApplicable(DomainError):
    """A Legendrian move does not match the diagram at the requested place."""


class ResourceError(GLRackError):
    """A configured search cap was exceeded."""
