"""Classical field theory of point sources with an invariant evolution
parameter: five-component gauge fields, their Green functions, and the
numerical machinery to cross-check the closed forms.
"""

__version__ = "0.1.0"

from .fivespace import (Constants, FiveVector, FourVector, Signature,
                        contract4, contract5, interval4, metric_diag,
                        reduced_velocity)
from .source import (CurrentSupport, Regime, RegimeLabel, UniformSource,
                     classify, current_at, mass_shell_ratio,
                     normalized_velocity)
from .fields import (DeltaDecomposition, FieldTensor, SingularSurfaceField,
                     SmoothField, concatenate, delta_decomposition,
                     eval_field, field_tensor,
                     smooth_denominator_coefficients, tau_roots)
from .greens import (BoundaryDelta, KernelFamily, KernelSpec, KernelValue,
                     eval_classic_41, eval_land_horwitz, eval_laplace4,
                     eval_maxwell_pp, eval_oron_horwitz, eval_unified)
from .oracle import (ExtrapolatedField, PTauCoefficients, QuadratureResult,
                     concatenate_closed, concatenate_numeric, convolve_ums,
                     extrapolated_field, p_tau, pairing_convolution,
                     rho_sequence, semi_analytic_ums)
from .dynamics import EventState, integrate, lorentz_accel, mass_ratio_sq
from .verify import (ResidualReport, continuity_residual, dalembert_residual,
                     gradient_check, mollified_density, pairing_check)
from . import errors

__all__ = [
    "__version__",
    "Constants", "FiveVector", "FourVector", "Signature",
    "contract4", "contract5", "interval4", "metric_diag", "reduced_velocity",
    "CurrentSupport", "Regime", "RegimeLabel", "UniformSource",
    "classify", "current_at", "mass_shell_ratio", "normalized_velocity",
    "DeltaDecomposition", "FieldTensor", "SingularSurfaceField", "SmoothField",
    "concatenate", "delta_decomposition", "eval_field", "field_tensor",
    "smooth_denominator_coefficients", "tau_roots",
    "BoundaryDelta", "KernelFamily", "KernelSpec", "KernelValue",
    "eval_classic_41", "eval_land_horwitz", "eval_laplace4", "eval_maxwell_pp",
    "eval_oron_horwitz", "eval_unified",
    "ExtrapolatedField", "PTauCoefficients", "QuadratureResult",
    "concatenate_closed", "concatenate_numeric", "convolve_ums",
    "extrapolated_field", "p_tau", "pairing_convolution", "rho_sequence",
    "semi_analytic_ums",
    "EventState", "integrate", "lorentz_accel", "mass_ratio_sq",
    "ResidualReport", "continuity_residual", "dalembert_residual",
    "gradient_check", "mollified_density", "pairing_check",
    "errors",
]
