"""Exception types shared across the package.

Each class maps to one failure category surfaced by the CLI:
configuration/parameter problems (exit 2), numerical failures (exit 3)
and unsupported probe/operation combinations (exit 4).
"""


class PhaseEstimationError(Exception):
    """Base class for all package errors."""


class ConfigurationError(PhaseEstimationError):
    """Invalid configuration, e.g. a generator incompatible with the state."""


class ParameterError(PhaseEstimationError):
    """A parameter outside its admissible domain."""


class RangeError(PhaseEstimationError):
    """A value outside the range covered by a grid."""


class TruncationError(PhaseEstimationError):
    """Fock cutoff too small for the norm-deficit policy."""

    def __init__(self, message, deficit=None):
        super().__init__(message)
        self.deficit = deficit


class NumericalError(PhaseEstimationError):
    """Numerical failure (underflow, singular search, non-convergence)."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InconsistencyError(PhaseEstimationError):
    """Data inconsistent with the model, e.g. an outcome missing from a table."""


class UnsupportedOperationError(PhaseEstimationError):
    """Operation not defined for this probe family or mode count."""
