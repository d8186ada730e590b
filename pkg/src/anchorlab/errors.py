"""Exception types shared by every module."""


class AnchorLabError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class SizeError(AnchorLabError, ValueError):
    """A graph or parameter exceeds a configured size cap."""


class NotFoundError(AnchorLabError, LookupError):
    """A requested pattern does not occur in the host graph."""


class Graph6Error(AnchorLabError, ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
