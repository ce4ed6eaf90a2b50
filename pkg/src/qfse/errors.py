"""Exception types shared across the package."""


class ArgumentError(ValueError):
    """A caller-supplied argument violates an operation's preconditions."""


class IngestError(Exception):
    """Corpus loading failed (missing directory, unreadable layout, ...)."""


class FormatError(Exception):
    """A data file is malformed. Carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"{message} (line {line})")
        self.line = line


class StateError(Exception):
    """An operation was invoked in a session state that does not allow it."""
