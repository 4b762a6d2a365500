"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A caller-supplied parameter violates an operation's precondition."""


class CapacityError(ValueError):
    """The request exceeds a size guard for exhaustive computation."""


class GenerationError(RuntimeError):
    """Random graph generation exhausted its retry budget."""


class DegenerateRegressionError(ValueError):
    """Least squares is undefined (fewer than two distinct x values)."""


class Graph6ParseError(ValueError):
    """Malformed graph6 token. ``offset`` is the index of the offending byte."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.message = message
        self.offset = offset
