"""Interferometric thermometry with thermalized mirrors and Kerr media."""

__version__ = "0.1.0"

from .errors import (
    DerivativeUnderflow,
    EtaOutOfRange,
    ModelRegimeMismatch,
    NonPositiveParameter,
    NonPositiveTemperature,
    OracleCapExceeded,
    OutOfDomain,
    ParseError,
    ThermometryError,
    TruncationOverflow,
    TruncationTooSmall,
    UnknownParameter,
)
from .params import (
    ExperimentSpec,
    KerrSpec,
    LightSpec,
    LossSpec,
    Mirrors,
    PhysicalConstants,
    Regime,
    RegimeTag,
    SampleSpec,
    ValidatedSpec,
    classify_regime,
    paper_experiment,
    paper_temperature,
    small_phase_parameter,
    validate,
)
from .thermal import (
    ThermalOscillator,
    cos_diagonal,
    fock_distribution,
    make_thermal,
    thermal_cos_exact,
    x2_diagonal,
)
from .interferometer import MeasurementModel, MeasurementStats, effective_frequency, mean_M, second_moment
from .estimation import (
    Estimator,
    Formula,
    ResolutionReport,
    TemperatureResult,
    estimate_high_T,
    estimate_low_T,
    resolution_paper,
    resolution_propagated,
)
