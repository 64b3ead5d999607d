"""Exception hierarchy.

The CLI maps these onto exit codes: validation -> 2, resource -> 3,
numerical guards (poles, regularization, certification) -> 4.
"""


class LaaksoError(Exception):
    """Base class for all library errors."""


class ValidationError(LaaksoError, ValueError):
    """Invalid parameters (sequence entries, plate placement, ranges)."""


class ResourceError(LaaksoError):
    """A requested object would exceed the configured size budget."""


class NumericalGuardError(LaaksoError):
    """A computation was refused because it sits on a numerical hazard."""


class PoleError(NumericalGuardError):
    """Evaluation point is within guard distance of a pole.

    The offending pole is attached as ``descriptor`` (a PoleDescriptor).
    """

    def __init__(self, message, descriptor=None):
        super().__init__(message)
        self.descriptor = descriptor


class RegularizationError(NumericalGuardError):
    """A geometric level-sum cannot be continued (ratio exactly 1)."""


class CertificationError(NumericalGuardError):
    """A direct spectral sum cannot be certified (series diverges at s)."""


class InsufficientCutoffError(CertificationError):
    """The tail bound could not be reached; carries the required cutoff."""

    def __init__(self, message, required_cutoff=None):
        super().__init__(message)
        self.required_cutoff = required_cutoff


class MultiplicityError(ValidationError):
    """A multiplicity rule produced a negative or non-integral count."""


class OracleConvergenceError(NumericalGuardError):
    """The sparse eigensolver failed to converge."""
