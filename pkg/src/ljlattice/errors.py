"""Exception hierarchy shared by all modules."""


class LatticeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LatticeError, ValueError):
    """An argument violates a documented precondition."""


class UnsupportedError(LatticeError):
    """The requested evaluation path is not implemented for these arguments."""


class SeriesTruncationError(LatticeError):
    """A series did not reach the requested tolerance within its term cap."""


class SolverError(LatticeError):
    """A root solve failed, e.g. the bracket shows no sign change."""
