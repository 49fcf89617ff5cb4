"""Exception hierarchy.

The CLI maps these onto exit codes: ConfigError -> 2, NumericalFailure
and subclasses -> 3, AssumptionViolation and subclasses -> 4,
BlowUpDetected -> 5.
"""


class NnlstepError(Exception):
    """Base class for all package errors."""


class ConfigError(NnlstepError):
    """Bad or inconsistent user configuration / input files."""


class NumericalFailure(NnlstepError):
    """An algorithm failed to reach its accuracy target."""


class SingularPointError(NumericalFailure):
    """Evaluation requested at or too close to the k = 0 singularity."""


class RefinementError(NumericalFailure):
    """Root refinement (Newton / subdivision) did not converge."""


class BoxBoundaryZeroError(NumericalFailure):
    """A zero sits on (or too close to) a search box boundary."""


class NotAZeroError(NumericalFailure):
    """Norming-constant column ratios disagree: the point is not a zero."""


class NearSingularError(NumericalFailure):
    """1 - r1*r2 vanishes (to tolerance) at the requested direction."""


class BranchError(NumericalFailure):
    """A logarithm branch could not be continued along the contour."""


class DegenerateReflectionError(NumericalFailure):
    """Reflection coefficient vanishes where an amplitude formula divides by it."""


class GammaPoleError(NumericalFailure):
    """Gamma-function argument degenerates to a pole."""


class OutOfDomainError(NumericalFailure):
    """A requested ray leaves the trusted region of a simulation."""


class BlowUpPointError(NumericalFailure):
    """Kink denominator passes within tolerance of zero at (x0, t)."""


class AssumptionViolation(NnlstepError):
    """Spectral data violate the working assumptions of the asymptotics."""


class BifurcationProximityError(AssumptionViolation):
    """R is too close to a bifurcation value n*pi/A."""


class TransitionZoneError(AssumptionViolation):
    """Direction xi falls inside a guard band around a sector boundary."""


class SectorInconsistencyError(AssumptionViolation):
    """Im nu is outside the band implied by the sector index."""


class BlowUpDetected(NnlstepError):
    """The direct solver detected blow-up; carries the estimated time."""

    def __init__(self, message, t_blowup=None):
        super().__init__(message)
        self.t_blowup = t_blowup
