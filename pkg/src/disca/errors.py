"""Exception types shared across the package."""


class DiscaError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(DiscaError, ValueError):
    """Sample data is malformed: non-finite entries, too few rows, wrong shape."""


class DimensionMismatchError(DiscaError, ValueError):
    """Paired inputs disagree on a shared dimension (row counts, vector length)."""


class InvalidParameterError(DiscaError, ValueError):
    """A scalar parameter lies outside its documented range."""


class DegenerateSampleError(DiscaError):
    """A sample is constant, so the normalized test statistic is undefined.

    Callers treat the pair as independent by convention (a constant is
    independent of everything).
    """


class ConvexityViolationError(DiscaError):
    """xi - psi <= 0: the concave part of the DC split is not convex.

    The outer loop must grow xi before running DCA again.
    """


class NumericalFailureError(DiscaError):
    """An iterate became non-finite."""


class SolverFailureError(DiscaError):
    """Every restart of the direction solver failed.

    ``details`` carries one diagnostic dict per failed restart.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details if details is not None else []


class InvalidComparisonError(DiscaError, ValueError):
    """Subspace distance requested between subspaces of unequal rank."""


class ParseError(DiscaError, ValueError):
    """CSV input could not be parsed; the message carries the file location."""
