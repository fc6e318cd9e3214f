class ZollDisksError(Exception):
    """Base class for every error raised by zolldisks."""
    pass


class SpecFileError(ZollDisksError):
    """Raised when a surface specification or disk file cannot be parsed."""
    pass


class UnknownConfigKey(ZollDisksError, KeyError):
    """Raised when a config override names a key that has no default."""
    pass


class DegenerateTangency(ZollDisksError):
    """Raised when the two tangent lines through a point coincide (point on Q)."""
    pass


class NearConic(ZollDisksError):
    """Raised when the form Upsilon is evaluated too close to its singular conic."""
    pass


class QuadratureUnresolved(ZollDisksError):
    """Raised when successive quadrature refinements disagree."""
    pass


class DocilityRequired(ZollDisksError):
    """Raised when a solve is requested on a surface that fails certification."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DerivativeVanishes(ZollDisksError):
    """Raised when the boundary loop of a disk has a (numerically) zero derivative."""
    pass


class PhaseStepTooLarge(ZollDisksError):
    """Raised when the winding count cannot be resolved even at the finest sampling."""
    pass


class SolverFailure(ZollDisksError):
    """Common base for numerical failures of the disk solver and the tracer."""

    def __init__(self, message, u0=None):
        super().__init__(message)
        self.u0 = u0


class ChartOverflow(SolverFailure):
    """Raised when a disk sample lands too close to the pole of its chart."""
    pass


class NoConvergence(SolverFailure):
    """Raised when damped Gauss-Newton stagnates above tolerance."""
    pass


class HolomorphyLoss(SolverFailure):
    """Raised when a chart change produces negative-frequency energy."""
    pass


class ContinuationStuck(SolverFailure):
    """Raised when the homotopy step falls below its minimum."""
    pass


class SeedNotFound(SolverFailure):
    """Raised when no grid disk boundary passes near the requested surface point."""
    pass


class TraceDiverged(SolverFailure):
    """Raised when the geodesic corrector fails at the minimum step."""
    pass


class NotClosed(SolverFailure):
    """Raised when a geodesic trace exhausts its step budget without closing."""
    pass


class KappaMismatch(SolverFailure):
    """Raised when a sweep stores disks whose centre does not match their moduli point."""
    pass
