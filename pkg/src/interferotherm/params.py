"""Physical constants, experiment parameters and temperature-regime routing.

Everything is SI. Both the sample frequency ``omega`` and the light frequency
``omega_p`` are treated as angular frequencies.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, fields, replace

from .errors import EtaOutOfRange, NonPositiveParameter, NonPositiveTemperature

#: Ratio hbar*omega/(K*T) at or below which the continuum (high-T) model applies.
HIGH_T_THRESHOLD = 1e-2
#: Ratio at or above which only the two lowest levels matter.
LOW_T_THRESHOLD = 1e2
#: Small-phase parameter above which a warning is attached.
SMALL_PHASE_WARN = 0.1


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34
    boltzmann: float = 1.380649e-23
    light_speed: float = 2.99792458e8


SI = PhysicalConstants()


@dataclass(frozen=True)
class SampleSpec:
    mass: float
    omega: float


@dataclass(frozen=True)
class LightSpec:
    omega_p: float
    photon_number: float
    refractive_index: float = 1.0


@dataclass(frozen=True)
class KerrSpec:
    chi: float = 0.0


@dataclass(frozen=True)
class LossSpec:
    eta_detect: float = 1.0
    eta_reflect: float = 1.0

    @property
    def efficiency(self):
        return self.eta_detect * self.eta_reflect


class Mirrors(enum.Enum):
    ONE = "one"
    TWO = "two"

    @property
    def factor(self):
        """How many thermalized samples contribute to the phase variance."""
        return 1 if self is Mirrors.ONE else 2


@dataclass(frozen=True)
class ExperimentSpec:
    """Complete description of one interferometric thermometer.

    With ``mirrors=Mirrors.TWO`` both mirrors are identical samples described
    by ``sample``.
    """

    sample: SampleSpec
    light: LightSpec
    kerr: KerrSpec = KerrSpec()
    loss: LossSpec = LossSpec()
    mirrors: Mirrors = Mirrors.ONE
    constants: PhysicalConstants = SI

    def with_(self, **changes):
        """Return a copy with flat-named parameters replaced.

        Accepts the sub-spec field names directly (``mass``, ``omega_p``,
        ``chi``, ``eta_detect``, ``hbar``...) as well as the top-level ones.
        """
        groups = {
            "sample": SampleSpec,
            "light": LightSpec,
            "kerr": KerrSpec,
            "loss": LossSpec,
            "constants": PhysicalConstants,
        }
        top = {k: v for k, v in changes.items() if k in {f.name for f in fields(self)}}
        rest = {k: v for k, v in changes.items() if k not in top}
        new = replace(self, **top)
        for group, cls in groups.items():
            names = {f.name for f in fields(cls)}
            sub = {k: rest.pop(k) for k in list(rest) if k in names}
            if sub:
                new = replace(new, **{group: replace(getattr(new, group), **sub)})
        if rest:
            raise TypeError(f"unknown parameter(s): {', '.join(sorted(rest))}")
        return new


@dataclass(frozen=True)
class ValidatedSpec(ExperimentSpec):
    """An :class:`ExperimentSpec` whose invariants have been checked."""

    warnings: tuple = field(default=(), compare=True)

    def with_(self, **changes):
        base = ExperimentSpec(**{f.name: getattr(self, f.name) for f in fields(ExperimentSpec)})
        return validate(base.with_(**changes))


class RegimeTag(enum.Enum):
    HIGH_T = "HighT"
    INTERMEDIATE = "Intermediate"
    LOW_T = "LowT"


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    ratio: float


def _positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise NonPositiveParameter(name, value)


def validate(spec):
    """Check every parameter invariant and return a :class:`ValidatedSpec`.

    Raises
    ------
    NonPositiveParameter
        Names the offending field.
    EtaOutOfRange
        An efficiency outside (0, 1].
    """
    if isinstance(spec, ValidatedSpec):
        return spec

    c = spec.constants
    for name in ("hbar", "boltzmann", "light_speed"):
        _positive(name, getattr(c, name))
    _positive("mass", spec.sample.mass)
    _positive("omega", spec.sample.omega)
    _positive("omega_p", spec.light.omega_p)
    _positive("refractive_index", spec.light.refractive_index)

    N = spec.light.photon_number
    if not (math.isfinite(N) and N >= 0):
        raise NonPositiveParameter("photon_number", N)
    chi = spec.kerr.chi
    if not (math.isfinite(chi) and chi >= 0):
        raise NonPositiveParameter("chi", chi)
    for name in ("eta_detect", "eta_reflect"):
        eta = getattr(spec.loss, name)
        if not (math.isfinite(eta) and 0 < eta <= 1):
            raise EtaOutOfRange(name, eta)
    if not isinstance(spec.mirrors, Mirrors):
        raise TypeError(f"mirrors must be a Mirrors member, got {spec.mirrors!r}")

    warnings = []
    if chi >= 1:
        warnings.append(f"chi={chi:g} is not small; Kerr expansion assumes chi << 1")
    if spec.light.refractive_index < 1:
        warnings.append(f"refractive_index={spec.light.refractive_index:g} is below 1")
    return ValidatedSpec(
        **{f.name: getattr(spec, f.name) for f in fields(ExperimentSpec)},
        warnings=tuple(warnings),
    )


def level_ratio(spec, T):
    """hbar*omega/(K*T), the dimensionless level spacing."""
    if not (T > 0):
        raise NonPositiveTemperature(T)
    c = spec.constants
    return c.hbar * spec.sample.omega / (c.boltzmann * T)


def temperature_for_ratio(spec, ratio):
    """Inverse of :func:`level_ratio`."""
    c = spec.constants
    return c.hbar * spec.sample.omega / (c.boltzmann * ratio)


def classify_regime(spec, T, high_threshold=HIGH_T_THRESHOLD, low_threshold=LOW_T_THRESHOLD):
    ratio = level_ratio(spec, T)
    if ratio <= high_threshold:
        tag = RegimeTag.HIGH_T
    elif ratio >= low_threshold:
        tag = RegimeTag.LOW_T
    else:
        tag = RegimeTag.INTERMEDIATE
    return Regime(tag, ratio)


def small_phase_parameter(spec, T):
    """Thermal mean of (k x)^2 with k = omega_p'/c for one sample.

    This is the expansion parameter every quadratic model relies on. The
    Kerr-enhanced frequency is used, so it reduces to (omega_p/c)^2 <x^2>
    in the linear case.
    """
    from .interferometer import effective_frequency
    from .thermal import make_thermal

    osc = make_thermal(spec, T)
    k = effective_frequency(spec) / spec.constants.light_speed
    return k * k * osc.x_var


def warnings_at(spec, T):
    """Static warnings of ``spec`` plus those that depend on ``T``."""
    spec = validate(spec)
    out = list(spec.warnings)
    s = small_phase_parameter(spec, T)
    if s > SMALL_PHASE_WARN:
        out.append(f"small-phase parameter {s:.3g} exceeds {SMALL_PHASE_WARN}; quadratic models unreliable")
    return tuple(out)


def paper_experiment():
    """Reference operating point: a Kerr gas cell and a nanogram oscillator.

    chi = 1e-8, N = 1e10, omega_p = 1e10, m = 1e-10 kg, omega = 1e2,
    unit efficiencies and refractive index 1, one thermalized mirror.
    """
    return validate(
        ExperimentSpec(
            sample=SampleSpec(mass=1e-10, omega=1e2),
            light=LightSpec(omega_p=1e10, photon_number=1e10, refractive_index=1.0),
            kerr=KerrSpec(chi=1e-8),
        )
    )


def paper_temperature(constants=SI):
    """Temperature with K*T = 1e-21 J."""
    return 1e-21 / constants.boltzmann
