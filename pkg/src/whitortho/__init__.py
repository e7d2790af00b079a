"""Whittaker functions of imaginary order, their index transform, and
numerical checks of the associated orthogonality relation."""

from .errors import (
    AccuracyUnachievable,
    DegenerateOrders,
    DivergenceError,
    DomainError,
    LossOfPrecision,
    NonConvergence,
    OverflowRisk,
    ParameterPole,
    PoleError,
    WhittakerError,
)
from .hypergeom import SeriesResult, asymptotic_2f0, kummer_1f1
from .orthocheck import (
    OverlapRecord,
    VerificationReport,
    nascent_delta,
    run_suites,
    small_xi_trig_model,
    smoothed_orthogonality,
    truncated_overlap,
    wronskian_boundary,
)
from .quadrature import QuadratureResult, integrate_finite, integrate_semiinfinite
from .specfun import (
    abs_gamma_2imu,
    abs_gamma_half_plus_imu,
    complex_gamma,
    orthogonality_normalization,
)
from .transform import (
    RadialFunction,
    SpectralFunction,
    analyze,
    kl_transform_pair,
    round_trip,
    synthesize,
)
from .whittaker import (
    EvalOutcome,
    Regime,
    SmallXCoefficients,
    WhittakerOrder,
    macdonald_k_imag,
    small_x_coefficients,
    whittaker_m,
    whittaker_w,
    whittaker_w_derivative,
    x_switch,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
