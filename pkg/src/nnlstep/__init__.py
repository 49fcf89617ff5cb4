"""Inverse-scattering asymptotics for the defocusing nonlocal NLS
equation with step-like data, plus an independent direct solver."""

from .asymptotics import (
    AsymptoticPrediction,
    KinkProfile,
    Sector,
    alpha,
    beta_gamma,
    c0_values,
    classify,
    kink,
    kink_profile,
    plateau,
    predict,
)
from .errors import (
    AssumptionViolation,
    BifurcationProximityError,
    BlowUpDetected,
    ConfigError,
    NnlstepError,
    NumericalFailure,
    TransitionZoneError,
)
from .model import StepAsymptoticsModel
from .pde import FieldSnapshot, SimulationConfig, compare, ray_value, simulate
from .phase import PhaseEngine, PhaseValues, chi, delta, im_nu_branch, nu, theta
from .scattering import (
    BackgroundParams,
    InitialProfile,
    JostMatrix,
    SpectralData,
    jost_at_origin,
    norming_constant,
    pure_step_spectral,
    reflection,
    spectral_functions,
    transfer_matrix_oracle,
)
from .spectrum import (
    ArgWinding,
    AssumptionReport,
    OmegaSet,
    ZeroSet,
    background_zero_set,
    find_omegas,
    find_zeros,
    pure_step_omegas,
    pure_step_zeros,
    verify_assumptions,
    winding_profile,
)

__version__ = "0.1.0"
