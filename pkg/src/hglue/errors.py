"""Exception taxonomy for the package.

Every error raised by library code derives from HglueError so callers can
catch everything in one place.  The leaf types mirror the failure modes of
the pipeline: shape problems, bad parameters, points outside chart domains,
incompatible gluing data, iteration failures, singular linear problems,
starting data outside the contraction basin, and report I/O.
"""


class HglueError(Exception):
    """Base class for all package errors."""


class DimensionError(HglueError):
    """Array arguments have the wrong shape or incompatible shapes."""


class InvalidInput(HglueError):
    """Parameters violate a documented precondition."""


class DomainError(HglueError):
    """A point lies outside the domain of the requested map."""


class GluingError(HglueError):
    """Side data cannot be glued; carries the measured mismatch."""

    def __init__(self, message, mismatch=None):
        super().__init__(message)
        self.mismatch = mismatch


class ConvergenceError(HglueError):
    """An iterative method exhausted its budget; carries the trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class SingularOperatorError(HglueError):
    """A linear operator is (numerically) singular where it must not be."""


class BasinError(HglueError):
    """Initial residual is too large for the contraction argument."""


class IoError(HglueError):
    """A report or artifact could not be written."""
