"""Exception types shared across the toolkit."""


class ZetaLadderError(Exception):
    """Base class for all toolkit errors."""


class DomainError(ZetaLadderError, ValueError):
    """Argument outside the supported domain (e.g. ordinate below 2)."""


class RangeEscapeError(ZetaLadderError, ValueError):
    """A ladder evaluation or iterate left the tabulated working range."""

    def __init__(self, message, depth=None):
        super().__init__(message)
        self.depth = depth


class AdmissibilityError(ZetaLadderError, ValueError):
    """Window parameter U outside its admissible range for the given T."""


class QuadratureError(ZetaLadderError, RuntimeError):
    """Adaptive quadrature failed to converge within its panel budget."""

    def __init__(self, message, panel=None):
        super().__init__(message)
        self.panel = panel


class SearchExhaustedError(ZetaLadderError, RuntimeError):
    """Zero scan ran past its configured span without success."""


class InvalidPartitionError(ZetaLadderError, ValueError):
    """Partition rejected by the factorization-formula contract."""


class BracketingError(ZetaLadderError, RuntimeError):
    """Root finder could not bracket its target on the scanned profile."""


class PrecisionLossWarning(UserWarning):
    """Evaluation proceeded although the remainder estimate exceeds tolerance."""
