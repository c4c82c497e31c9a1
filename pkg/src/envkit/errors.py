"""Exception types shared across the package."""


class EnvkitError(Exception):
    """Base class for all library errors."""


class ParameterError(EnvkitError, ValueError):
    """A numeric parameter is outside its admissible range."""


class DimensionMismatchError(EnvkitError, ValueError):
    """Arrays in one problem instance disagree on dimension."""


class RankDeficientError(EnvkitError, ValueError):
    """A constraint matrix does not have full row rank."""


class SingularOperatorError(EnvkitError, ValueError):
    """An operator that must be invertible is numerically singular."""


class EigendecompositionError(EnvkitError, RuntimeError):
    """The symmetric eigensolver failed to converge."""


class InstanceFormatError(EnvkitError, ValueError):
    """A problem-instance document is malformed."""
