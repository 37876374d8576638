"""Shared exception types for the toolkit."""


class DesignSieveError(Exception):
    """Base class for every error raised by this package."""


class DegreeMismatchError(DesignSieveError, ValueError):
    """Operands act on domains of different sizes."""


class CapacityError(DesignSieveError):
    """A configured size cap would be exceeded (never silent truncation).

    ``resume`` optionally carries enough state to describe where a capped
    enumeration stopped.
    """

    def __init__(self, message, resume=None):
        super().__init__(message)
        self.resume = resume


class IntegrityError(DesignSieveError):
    """Bundled or declared data disagrees with its recomputation."""


class RefutationError(DesignSieveError):
    """A computation contradicts a mathematically certain expectation."""


class IntransitiveError(DesignSieveError, ValueError):
    """The operation needs a transitive group; carries the orbit partition."""

    def __init__(self, message, orbits=()):
        super().__init__(message)
        self.orbits = tuple(tuple(o) for o in orbits)


class NotAutomorphismError(DesignSieveError, ValueError):
    """The given group does not map the block set to itself."""


class FormatError(DesignSieveError, ValueError):
    """Malformed ``.group`` or ``.design`` file; carries the line number."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
