"""Exception types shared across the package.

Every condition that the library treats as exceptional gets its own class so
callers can discriminate without string matching.  Zero-valued fields (e.g. a
step function gating a region off) are *values*, not errors, and are returned
as ordinary zero vectors.
"""


class PreMaxwellError(Exception):
    """Base class for all package errors."""


class DegenerateFifthComponent(PreMaxwellError):
    """b⁵ is (numerically) zero, so the reduced 4-velocity b/b⁵ is undefined."""


class LightlikeVelocity(PreMaxwellError):
    """b·b is on the lightlike boundary; normalized velocity is undefined."""


class OnSingularSupport(PreMaxwellError):
    """Evaluation point lies on the field's singular surface (pole or cone)."""


class ComplexRoots(PreMaxwellError):
    """The root discriminant is negative: the point is outside the support."""


class DegenerateVelocity(PreMaxwellError):
    """The reduced 4-velocity is lightlike (b′² numerically zero)."""


class SingularRegimeUnsupported(PreMaxwellError):
    """Operation defined only for the smooth regime was called on a δ-field."""


class OnCone(PreMaxwellError):
    """Evaluation point lies on a kernel's light-cone-like surface."""


class BranchSingularity(PreMaxwellError):
    """Evaluation point sits on a branch point of a closed-form kernel."""


class QuadratureFailure(PreMaxwellError):
    """Adaptive quadrature could not reach the requested error target."""


class RegulatorTooSmall(PreMaxwellError):
    """Regulator below the floating-point safety floor."""


class DomainError(PreMaxwellError):
    """Input outside the mathematical domain of the requested closed form."""


class TailEstimateUnreliable(PreMaxwellError):
    """Analytic tail correction is too large a fraction of the total."""


class SingularSupportCrossed(PreMaxwellError):
    """A trajectory step landed on (or numerically at) the field's pole."""


class StepRejected(PreMaxwellError):
    """Integrator produced a nonfinite state."""


class StencilOnSupport(PreMaxwellError):
    """A finite-difference stencil point touched the singular support."""
