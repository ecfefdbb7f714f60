"""Temperature estimators and resolution formulas.

Two notions of resolution are reported side by side:

* the closed forms 2 m w^2/(N K k^2) and m w^2/(eta N K k'^2);
* first-order propagation dT = Delta M / |d<M>/dT| using the exact spread of M.

The closed forms are not reproducible from Delta M ~ N, so neither is
derived from the other.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DerivativeUnderflow, NonPositiveTemperature, OutOfDomain
from .interferometer import (
    MeasurementModel,
    MeasurementStats,
    correction_scale,
    effective_frequency,
    mean_M,
    second_moment,
)
from .params import Mirrors, validate


class Estimator(enum.Enum):
    HIGH_T_ONE = "HighTOne"
    HIGH_T_TWO = "HighTTwo"
    LOW_T_ONE = "LowTOne"
    KERR_HIGH_T_ONE = "KerrHighTOne"


class Formula(enum.Enum):
    EQ14 = "Eq14"
    EQ19 = "Eq19"
    EQ24 = "Eq24"
    EQ25 = "Eq25"


@dataclass(frozen=True)
class TemperatureResult:
    T_hat: float
    estimator: Estimator
    valid_domain: bool
    b: float | None = None
    d: float | None = None


@dataclass(frozen=True)
class ResolutionReport:
    """Resolution of one configuration.

    ``delta_T_paper`` always comes from the closed form named by ``formula``.
    The propagated fields are only filled by :func:`resolution_propagated`:
    ``delta_T_propagated`` uses the exact spread ``delta_M``;
    ``delta_T_paper_spread`` uses Delta M = N instead; and
    ``noise_to_signal_paper`` is the literal (Delta M)^2 / |d<M>/dT|^2 with
    Delta M = N.
    """

    delta_T_paper: float
    formula: Formula
    delta_T_propagated: float | None = None
    dM_dT: float | None = None
    dM_dT_analytic: float | None = None
    delta_M: float | None = None
    paper_delta_M: float | None = None
    delta_T_paper_spread: float | None = None
    noise_to_signal_paper: float | None = None


def _is_linear(spec):
    return spec.kerr.chi == 0.0 and spec.light.refractive_index == 1.0


def _mirrors(spec, mirrors):
    spec = validate(spec)
    if mirrors is not None and mirrors is not spec.mirrors:
        spec = spec.with_(mirrors=mirrors)
    return spec


def _observed_deficit(spec, observed):
    if isinstance(observed, MeasurementStats):
        return observed.deficit, observed.excess
    n_det = spec.loss.efficiency * spec.light.photon_number
    if n_det == 0:
        raise OutOfDomain("no photons detected; <M> carries no temperature information")
    return 1.0 - observed / n_det, None


def estimate_high_T(spec, observed, mirrors=None, strict=True):
    """Invert the continuum-limit mean <M> = N - mf N b (1 + 2 K T/(hbar w)).

    ``observed`` is either a measured <M> or a :class:`MeasurementStats`; the
    latter carries the deficit 1 - <M>/N at full precision, which matters
    whenever the thermal signal is below ~1e-8 N. The Kerr case uses
    omega_p' in b, so one code path covers every configuration.

    Raises
    ------
    OutOfDomain
        The observation implies T <= 0 (only when ``strict``).
    """
    spec = _mirrors(spec, mirrors)
    mf = spec.mirrors.factor
    c = spec.constants
    b = correction_scale(spec)
    d, _ = _observed_deficit(spec, observed)
    T = (d / (mf * b) - 1.0) * c.hbar * spec.sample.omega / (2.0 * c.boltzmann)
    if spec.mirrors is Mirrors.TWO:
        tag = Estimator.HIGH_T_TWO
    else:
        tag = Estimator.HIGH_T_ONE if _is_linear(spec) else Estimator.KERR_HIGH_T_ONE
    valid = T > 0
    if strict and not valid:
        raise OutOfDomain(f"observation implies T = {T:.6g} K <= 0", bound="T>0")
    return TemperatureResult(T, tag, valid, b=b, d=d)


def estimate_low_T(spec, observed, strict=True):
    """Two-level inversion T = hbar w / (K ln((3b - d)/(d - b))).

    With d the fractional deficit and b the ground-state correction.
    The domain is b < d < 2b. The logarithm is evaluated from the excess
    e = d - b as ln((2b - e)/e) so that deep in the quantum regime, where
    d - b is ~e^{-100} b, the temperature still round-trips.
    """
    spec = validate(spec)
    if spec.mirrors is not Mirrors.ONE:
        raise ValueError("the two-level estimator is defined for one thermalized mirror")
    c = spec.constants
    b = correction_scale(spec)
    d, e = _observed_deficit(spec, observed)
    if e is None:
        e = d - b
    if e <= 0:
        if strict:
            raise OutOfDomain(f"d = {d!r} must exceed b = {b!r}", bound="d>b")
        return TemperatureResult(0.0, Estimator.LOW_T_ONE, False, b=b, d=d)
    if e >= b:
        if strict:
            raise OutOfDomain(f"d = {d!r} must stay below 2b = {2 * b!r}", bound="d<2b")
        return TemperatureResult(math.inf, Estimator.LOW_T_ONE, False, b=b, d=d)
    T = c.hbar * spec.sample.omega / (c.boltzmann * math.log((2.0 * b - e) / e))
    return TemperatureResult(T, Estimator.LOW_T_ONE, True, b=b, d=d)


def formula_value(spec, formula):
    """Evaluate one closed-form resolution regardless of configuration."""
    spec = validate(spec)
    formula = Formula(formula)
    c = spec.constants
    m, w = spec.sample.mass, spec.sample.omega
    N = spec.light.photon_number
    if formula is Formula.EQ14:
        k = spec.light.omega_p / c.light_speed
        return 2.0 * m * w * w / (N * c.boltzmann * k * k)
    k = effective_frequency(spec) / c.light_speed
    base = m * w * w / (N * c.boltzmann * k * k)
    if formula is Formula.EQ25:
        return base / spec.loss.efficiency
    return base


def select_formula(spec):
    if spec.loss.efficiency != 1.0:
        return Formula.EQ25
    if spec.mirrors is Mirrors.TWO:
        return Formula.EQ19
    return Formula.EQ14 if _is_linear(spec) else Formula.EQ24


def resolution_paper(spec, mirrors=None):
    """Closed-form resolution for the configuration of ``spec``.

    * one mirror, linear, lossless: 2 m w^2 / (N K (w_p/c)^2)
    * two mirrors, lossless:        m w^2 / (N K (w_p'/c)^2)
    * one mirror, Kerr, lossless:   m w^2 / (N K (w_p'/c)^2)
    * any lossy configuration:      m w^2 / (eta1 eta2 N K (w_p'/c)^2)

    The Kerr and lossy forms carry m w^2 rather than 2 m w^2 even for one
    mirror; they are reproduced as given.
    """
    spec = _mirrors(spec, mirrors)
    formula = select_formula(spec)
    return ResolutionReport(formula_value(spec, formula), formula)


_EXACT = {MeasurementModel.EXACT_GAUSSIAN, MeasurementModel.LAGUERRE_SUM, MeasurementModel.FOCK_BRUTE_FORCE}


def _signal(spec, T, model, override):
    s = mean_M(spec, T, model, override)
    return s.excess if s.excess is not None else s.deficit


def _central(spec, T, model, override, h):
    up = _signal(spec, T * (1.0 + h), model, override)
    down = _signal(spec, T * (1.0 - h), model, override)
    return (up - down) / (2.0 * T * h)


def deficit_slope(spec, T, model, step=1e-6, override=False):
    """d(1 - <M>/(eta N))/dT by central differences with one Richardson step."""
    coarse = _central(spec, T, model, override, step)
    fine = _central(spec, T, model, override, 0.5 * step)
    return (4.0 * fine - coarse) / 3.0


def resolution_propagated(spec, T, model, mirrors=None, step=1e-6, override=False):
    """Noise-to-signal resolution Delta M / |d<M>/dT| at temperature ``T``.

    Delta M is the exact spread: taken from ``model`` itself when it is an
    exact model, otherwise from the Gaussian characteristic function.

    Raises
    ------
    DerivativeUnderflow
        |d<M>/dT| < 1e-30.
    """
    if not (T > 0):
        raise NonPositiveTemperature(T)
    spec = _mirrors(spec, mirrors)
    model = MeasurementModel.parse(model)
    n_det = spec.loss.efficiency * spec.light.photon_number
    dM_dT = -n_det * deficit_slope(spec, T, model, step, override)
    if not abs(dM_dT) >= 1e-30:
        raise DerivativeUnderflow(dM_dT)

    analytic = None
    if model is MeasurementModel.QUADRATIC_HIGH_T:
        c = spec.constants
        k = effective_frequency(spec) / c.light_speed
        m, w = spec.sample.mass, spec.sample.omega
        analytic = -n_det * spec.mirrors.factor * k * k * c.boltzmann / (2.0 * m * w * w)

    spread_model = model if model in _EXACT else MeasurementModel.EXACT_GAUSSIAN
    stats = second_moment(spec, T, spread_model, override)
    paper = resolution_paper(spec)
    slope = abs(dM_dT)
    return ResolutionReport(
        delta_T_paper=paper.delta_T_paper,
        formula=paper.formula,
        delta_T_propagated=stats.delta_M / slope,
        dM_dT=dM_dT,
        dM_dT_analytic=analytic,
        delta_M=stats.delta_M,
        paper_delta_M=stats.paper_delta_M,
        delta_T_paper_spread=stats.paper_delta_M / slope,
        noise_to_signal_paper=stats.paper_delta_M**2 / slope**2,
    )
