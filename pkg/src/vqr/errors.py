"""Exception hierarchy for vqr."""


class VqrError(Exception):
    """Base class for all vqr errors."""


class DimensionMismatch(VqrError):
    """Operands or declared subsystem dimensions do not fit together."""


class NotHermitian(VqrError):
    """Matrix deviates from its adjoint beyond tolerance."""

    def __init__(self, message: str, defect: float = 0.0):
        super().__init__(message)
        self.defect = defect


class NotPSD(VqrError):
    """Matrix has an eigenvalue below the negativity tolerance."""

    def __init__(self, message: str, min_eigenvalue: float = 0.0):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class TraceNotOne(VqrError):
    """State trace differs from one beyond tolerance."""

    def __init__(self, message: str, trace: float = 0.0):
        super().__init__(message)
        self.trace = trace


class NumericalFailure(VqrError):
    """A numerical routine failed to converge or verify its output."""


class DomainError(VqrError):
    """A spectral function was evaluated outside its domain."""


class InvalidOrder(VqrError):
    """Schatten order p must satisfy p >= 1."""


class InvalidAlpha(VqrError):
    """Renyi order must be positive and different from 1."""


class OutOfRange(VqrError):
    """A scalar parameter is outside its documented range."""


class NonProjective(VqrError):
    """Observable projectors fail idempotence, orthogonality or completeness."""
