"""Exception types raised by the kinematics and dynamics routines."""


class LimbError(Exception):
    """Base class for all errors raised by this package."""


class InvalidAxisError(LimbError):
    """The screw supplied as a displacement axis is not a unit line."""


class DegenerateLineError(LimbError):
    """Two points meant to define a line are (nearly) coincident."""


class UndefinedPitchError(LimbError):
    """Pitch requested for a screw with zero direction part."""


class SingularConfigurationError(LimbError):
    """The reduced Jacobian is too ill-conditioned to invert.

    Carries the estimated condition number in ``condition``.
    """

    def __init__(self, condition: float, message: str | None = None):
        self.condition = condition
        super().__init__(message or f"singular configuration (condition estimate {condition:.3e})")


class AnalyticSingularityError(LimbError):
    """A denominator of the closed-form inverse Jacobian vanished."""


class PureTranslationError(LimbError):
    """A motion screw with zero angular part has no instantaneous axis."""


class SingularMassMatrixError(LimbError):
    """The assembled inertia system is singular (zero mass or degenerate inertia)."""
