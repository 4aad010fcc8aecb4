"""Exception types shared across the package."""


class ZetaPathError(Exception):
    """Base class for all package-specific errors."""


class NonClosure(ZetaPathError):
    """A group-theoretic closure property failed (coset enumeration did not close)."""


class NearPole(ZetaPathError):
    """An evaluation was requested too close to a pole of the function."""


class BranchAmbiguous(ZetaPathError):
    """Branch selection between the two quadratic roots could not be decided.

    Raised when no hint is available and the two side-constraint residuals
    are within a factor of 2 of each other.  The caller should approach the
    point along a path, supplying hints for branch continuity.
    """


class PoleAtOne(ZetaPathError):
    """zeta(s) was requested at (or within 1e-12 of) the pole s = 1."""


class MissedZero(ZetaPathError):
    """Zero scanning found fewer sign changes than the counting function predicts."""


class ParseError(ZetaPathError):
    """A zero-ordinate file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MonotonicityError(ZetaPathError):
    """Ingested zero ordinates were not strictly increasing."""


class NotReduced(ZetaPathError):
    """A word was not in reduced alternating form."""


class Blocked(ZetaPathError):
    """A path walk encountered an avatar-function pole (modulus above the cap)."""

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message)
        self.t = t


class StepCollapse(ZetaPathError):
    """Adaptive step halving in the tracer collapsed below the minimum step."""


class DerivativeSmall(ZetaPathError):
    """The corrector encountered |zeta'(s)| too small to proceed."""
