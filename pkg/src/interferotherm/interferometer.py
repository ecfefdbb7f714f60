"""Measurement statistics of the thermometric Michelson interferometer.

The detectors register M = A2^dag A1 + A1^dag A2 for the coherent input
|alpha/sqrt2>|alpha/sqrt2>, N = |alpha|^2. A thermalized mirror with position
x shifts the phase of its arm by k x, k = omega_p'/c, so that

    <M>   = N <cos(k dx)>
    <M^2> = N^2/2 <cos(2 k2 dx)> + N^2/2 + N

where dx is x (one sample) or x1 - x2 (two samples), and k2 uses the Kerr
factor 1 + chi (N+2)/2 that multiplies the two-photon phase.

Every model reduces to two numbers per wave number: the *deficit*
1 - <cos(k dx)> and its *excess* over the zero-temperature value. Keeping
those instead of <M> itself preserves the temperature signal, which sits ten
or more orders of magnitude below N in realistic settings.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .errors import ModelRegimeMismatch, OracleCapExceeded
from .params import Mirrors, RegimeTag, classify_regime, validate
from .thermal import (
    laguerre_thermal_sum,
    make_thermal,
    thermal_cos_deficit,
    thermal_cos_excess,
)

#: Largest photon number the Fock brute-force model accepts.
FOCK_PHOTON_CAP = 25


class MeasurementModel(enum.Enum):
    QUADRATIC_HIGH_T = "QuadraticHighT"
    TWO_LEVEL_LOW_T = "TwoLevelLowT"
    EXACT_GAUSSIAN = "ExactGaussian"
    LAGUERRE_SUM = "LaguerreSum"
    FOCK_BRUTE_FORCE = "FockBruteForce"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for m in cls:
            if value in (m.value, m.name) or str(value).lower() == m.value.lower():
                return m
        raise ValueError(f"unknown measurement model {value!r}")


@dataclass(frozen=True)
class MeasurementStats:
    """Moments of M under one measurement model.

    ``mean_M2``/``delta_M`` stay ``None`` when only the mean was requested.
    ``paper_delta_M`` is the conventional estimate Delta M ~ N (scaled by the
    detected photon number), kept next to the exact ``delta_M``.
    """

    mean_M: float
    mean_M2: float | None
    delta_M: float | None
    paper_delta_M: float
    model: MeasurementModel
    effective_omega_p: float
    detected_photons: float
    deficit: float
    excess: float | None
    mirrors: Mirrors


def effective_frequency(spec):
    """Kerr-enhanced light frequency [1 + chi (N+1)/2] n0 omega_p."""
    light = spec.light
    return (1.0 + 0.5 * spec.kerr.chi * (light.photon_number + 1.0)) * light.refractive_index * light.omega_p


def two_photon_frequency(spec):
    """Frequency [1 + chi (N+2)/2] n0 omega_p of the doubled phase in <M^2>."""
    light = spec.light
    return (1.0 + 0.5 * spec.kerr.chi * (light.photon_number + 2.0)) * light.refractive_index * light.omega_p


def correction_scale(spec, omega=None):
    """Per-photon ground-state correction b = (omega_p'/c)^2 hbar/(4 m omega)."""
    if omega is None:
        omega = effective_frequency(spec)
    c = spec.constants
    k = omega / c.light_speed
    return k * k * c.hbar / (4.0 * spec.sample.mass * spec.sample.omega)


def _check_regime(spec, T, model, override):
    if override:
        return
    need = {
        MeasurementModel.QUADRATIC_HIGH_T: RegimeTag.HIGH_T,
        MeasurementModel.TWO_LEVEL_LOW_T: RegimeTag.LOW_T,
    }.get(model)
    if need is None:
        return
    regime = classify_regime(spec, T)
    if regime.tag is not need:
        raise ModelRegimeMismatch(model.value, regime.tag.value)


def _combine_two(d, e, d0):
    # <cos k(x1-x2)> = <cos kx>^2 for independent identical samples
    deficit = d * (2.0 - d)
    excess = None if e is None else e * (2.0 - d - d0)
    return deficit, excess


def phase_deficit(spec, T, model, omega, override=False):
    """Deficit and excess of <cos(k dx)> with k = omega / c.

    Returns
    -------
    (deficit, excess)
        ``excess`` is ``None`` for the Fock brute-force model.
    """
    model = MeasurementModel.parse(model)
    _check_regime(spec, T, model, override)
    mf = spec.mirrors.factor
    b = correction_scale(spec, omega)

    if model is MeasurementModel.QUADRATIC_HIGH_T:
        r = make_thermal(spec, T).ratio
        return mf * b * (1.0 + 2.0 / r), mf * 2.0 * b / r
    if model is MeasurementModel.TWO_LEVEL_LOW_T:
        osc = make_thermal(spec, T)
        q = osc.boltzmann_factor
        return mf * b * (1.0 + 3.0 * q) / (1.0 + q), mf * b * 2.0 * q / (1.0 + q)

    osc = make_thermal(spec, T)
    k = omega / spec.constants.light_speed
    d0 = -math.expm1(-0.5 * k * k * osc.x_zpf * osc.x_zpf)
    if model is MeasurementModel.EXACT_GAUSSIAN:
        d, e = thermal_cos_deficit(osc, k), thermal_cos_excess(osc, k)
    elif model is MeasurementModel.LAGUERRE_SUM:
        s = laguerre_thermal_sum(osc, k)
        d, e = s.deficit, s.excess
    else:
        raise ValueError("FockBruteForce has no per-wave-number deficit; use fock_oracle")
    if spec.mirrors is Mirrors.TWO:
        return _combine_two(d, e, d0)
    return d, e


def _fock_stats(spec, T):
    from .fock_oracle import exact_M_stats

    if spec.light.photon_number > FOCK_PHOTON_CAP:
        raise OracleCapExceeded(spec.light.photon_number, FOCK_PHOTON_CAP)
    return exact_M_stats(spec, T)


def _paper_delta(spec):
    return spec.loss.efficiency * spec.light.photon_number


def mean_M(spec, T, model, override=False):
    """Expected photon-count signal <M> under ``model``.

    Loss multiplies every mean by eta_detect * eta_reflect.

    Raises
    ------
    ModelRegimeMismatch
        QuadraticHighT outside HighT or TwoLevelLowT outside LowT, unless
        ``override`` is set.
    """
    spec = validate(spec)
    model = MeasurementModel.parse(model)
    if model is MeasurementModel.FOCK_BRUTE_FORCE:
        full = _fock_stats(spec, T)
        return replace(full, mean_M2=None, delta_M=None)
    omega = effective_frequency(spec)
    d, e = phase_deficit(spec, T, model, omega, override)
    n_det = spec.loss.efficiency * spec.light.photon_number
    return MeasurementStats(
        mean_M=n_det * (1.0 - d),
        mean_M2=None,
        delta_M=None,
        paper_delta_M=_paper_delta(spec),
        model=model,
        effective_omega_p=omega,
        detected_photons=n_det,
        deficit=d,
        excess=e,
        mirrors=spec.mirrors,
    )


def second_moment(spec, T, model, override=False):
    """Full statistics: <M>, <M^2> and the exact spread Delta M.

    The variance is assembled from deficits,
    Var M = N + N^2 (2 d1 - d1^2 - d2/2), which stays accurate when both
    <M>^2 and <M^2> are ~1e20.
    """
    spec = validate(spec)
    model = MeasurementModel.parse(model)
    if model is MeasurementModel.FOCK_BRUTE_FORCE:
        return _fock_stats(spec, T)
    first = mean_M(spec, T, model, override)
    d1 = first.deficit
    d2, _ = phase_deficit(spec, T, model, 2.0 * two_photon_frequency(spec), override)
    n = first.detected_photons
    m2 = n * n * (1.0 - 0.5 * d2) + n
    var = n + n * n * (2.0 * d1 - d1 * d1 - 0.5 * d2)
    return replace(first, mean_M2=m2, delta_M=math.sqrt(max(0.0, var)))
