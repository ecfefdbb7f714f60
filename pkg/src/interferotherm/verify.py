"""Named self-checks comparing every model against its independent oracle."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .estimation import estimate_high_T, estimate_low_T, formula_value, resolution_paper, Formula
from .fock_oracle import exact_M_stats, exact_two_mirror_phase, verify_kerr_identity, verify_phase_identity
from .interferometer import correction_scale, effective_frequency, mean_M, second_moment
from .params import (
    ExperimentSpec,
    KerrSpec,
    LightSpec,
    Mirrors,
    PhysicalConstants,
    SampleSpec,
    paper_experiment,
    paper_temperature,
    small_phase_parameter,
    temperature_for_ratio,
    validate,
)
from .thermal import laguerre_thermal_sum, make_thermal, thermal_cos_deficit

NATURAL = PhysicalConstants(hbar=1.0, boltzmann=1.0, light_speed=1.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    seconds: float


def oracle_spec(N=4, omega_p=0.2, chi=0.0, mirrors=Mirrors.ONE):
    """Small natural-unit setup where every phase is O(0.1) and Fock sums are cheap."""
    return validate(
        ExperimentSpec(
            sample=SampleSpec(mass=1.0, omega=1.0),
            light=LightSpec(omega_p=omega_p, photon_number=N),
            kerr=KerrSpec(chi=chi),
            mirrors=mirrors,
            constants=NATURAL,
        )
    )


def _rel(a, b):
    return abs(a - b) / abs(b)


def _identities():
    worst = 0.0
    for angle in (0.1, 0.7, 2.9):
        worst = max(worst, verify_phase_identity(30, angle))
        for chi in (0.0, 0.05):
            worst = max(worst, verify_kerr_identity(30, angle, chi))
    return worst


def _high_t_models():
    spec = paper_experiment()
    T0 = paper_temperature()
    worst = 0.0
    for T in np.geomspace(T0 / 10, 10 * T0, 20):
        q = mean_M(spec, T, "QuadraticHighT").deficit
        g = mean_M(spec, T, "ExactGaussian").deficit
        s = small_phase_parameter(spec, T)
        worst = max(worst, abs(q - g) / s**2)
    return worst


def _laguerre_vs_gauss():
    spec = paper_experiment()
    T0 = paper_temperature()
    worst = 0.0
    for T in np.geomspace(T0 / 10, 10 * T0, 20):
        osc = make_thermal(spec, T)
        k = effective_frequency(spec) / spec.constants.light_speed
        s = laguerre_thermal_sum(osc, k)
        worst = max(worst, abs(s.deficit - thermal_cos_deficit(osc, k)) / (1e-10 + s.error))
    return worst


def _low_t_models():
    spec = paper_experiment().with_(chi=0.0)
    b = correction_scale(spec)
    worst = 0.0
    for ratio in (100.0, 300.0, 1000.0):
        T = temperature_for_ratio(spec, ratio)
        two = mean_M(spec, T, "TwoLevelLowT").deficit
        lag = mean_M(spec, T, "LaguerreSum").deficit
        worst = max(worst, abs(two - lag) / b)
    return worst


def _round_trip_high():
    base = paper_experiment()
    T0 = paper_temperature()
    worst = 0.0
    for mirrors in Mirrors:
        for chi in (0.0, 1e-8):
            spec = base.with_(chi=chi, mirrors=mirrors)
            for T in np.geomspace(T0 / 10, 10 * T0, 7):
                est = estimate_high_T(spec, mean_M(spec, T, "QuadraticHighT"))
                worst = max(worst, _rel(est.T_hat, T))
    return worst


def _round_trip_low():
    spec = paper_experiment().with_(chi=0.0)
    worst = 0.0
    for ratio in (100.0, 150.0, 300.0):
        T = temperature_for_ratio(spec, ratio)
        est = estimate_low_T(spec, mean_M(spec, T, "TwoLevelLowT"))
        worst = max(worst, _rel(est.T_hat, T))
    return worst


def _doubling():
    one = paper_experiment().with_(chi=0.0)
    two = one.with_(mirrors=Mirrors.TWO)
    T = paper_temperature()
    d1 = mean_M(one, T, "QuadraticHighT").deficit
    d2 = mean_M(two, T, "QuadraticHighT").deficit
    r1 = resolution_paper(one).delta_T_paper
    r2 = resolution_paper(two).delta_T_paper
    return max(abs(d2 / d1 - 2.0), abs(r1 / r2 - 2.0))


def _scaling():
    spec = paper_experiment().with_(chi=0.0, eta_detect=0.5)
    worst = 0.0
    for f in (2.0, 4.0, 8.0):
        base = formula_value(spec, Formula.EQ25)
        worst = max(worst, _rel(formula_value(spec.with_(photon_number=1e10 * f), Formula.EQ25) * f, base))
        worst = max(worst, _rel(formula_value(spec.with_(omega_p=1e10 * f), Formula.EQ25) * f * f, base))
        worst = max(worst, _rel(formula_value(spec.with_(eta_detect=0.5 / f), Formula.EQ25) / f, base))
    return worst


def _effective_frequency():
    return abs(effective_frequency(paper_experiment()) / 1e10 - 51.0)


def _hand_lossy():
    spec = paper_experiment()
    m, w, N, chi = 1e-10, 1e2, 1e10, 1e-8
    kprime = (1 + chi / 2 * (N + 1)) * 1e10 / 2.99792458e8
    hand = m * w**2 / (1.0 * N * 1.380649e-23 * kprime**2)
    return _rel(formula_value(spec, Formula.EQ25), hand)


def _shot_noise():
    spec = oracle_spec(N=16, omega_p=1e-9)
    st = second_moment(spec, 1.0, "ExactGaussian")
    return _rel(st.delta_M, 4.0)


def _two_mirror_double_sum():
    spec = oracle_spec()
    osc = make_thermal(spec, 2.0)
    value, _ = exact_two_mirror_phase(osc, 0.3)
    return abs(value - math.exp(-0.09 * osc.x_var))


def _fock(N):
    def run():
        worst = 0.0
        for mirrors in Mirrors:
            spec = oracle_spec(N=N, mirrors=mirrors)
            f = exact_M_stats(spec, 2.0)
            g = second_moment(spec, 2.0, "ExactGaussian")
            worst = max(worst, _rel(f.mean_M, g.mean_M), _rel(f.mean_M2, g.mean_M2))
        return worst

    return run


def _kerr_order(N):
    def run():
        res = []
        for chi in (1e-3, 5e-4):
            spec = oracle_spec(N=N, chi=chi)
            res.append(abs(exact_M_stats(spec, 2.0).mean_M - mean_M(spec, 2.0, "ExactGaussian").mean_M))
        # ratio/4 should approach 1; report the shortfall from second order
        return abs(res[0] / res[1] / 4.0 - 1.0)

    return run


FAST = [
    ("phase and Kerr operator identities", _identities, 1e-12),
    ("quadratic high-T model vs Gaussian oracle (units of s^2)", _high_t_models, 1.0),
    ("Laguerre sum vs Gaussian oracle (units of 1e-10 + tail)", _laguerre_vs_gauss, 1.0),
    ("two-level low-T model vs Laguerre sum (units of b)", _low_t_models, 1e-3),
    ("high-T estimator round trip", _round_trip_high, 1e-12),
    ("low-T estimator round trip", _round_trip_low, 1e-10),
    ("two-mirror doubling", _doubling, 1e-12),
    ("resolution scaling in N, omega_p, eta", _scaling, 1e-12),
    ("effective frequency 51 omega_p", _effective_frequency, 1e-6),
    ("lossy Kerr resolution by hand", _hand_lossy, 1e-12),
    ("shot-noise spread at k -> 0", _shot_noise, 1e-8),
    ("two-mirror double Laguerre sum", _two_mirror_double_sum, 1e-10),
    ("Fock brute force N=4", _fock(4), 1e-8),
]

FULL = FAST + [
    ("Fock brute force N=9", _fock(9), 1e-8),
    ("Fock brute force N=16", _fock(16), 1e-8),
    ("Fock brute force N=25", _fock(25), 1e-8),
    ("Kerr residual second order N=4 (shortfall from 4x)", _kerr_order(4), 0.05),
    ("Kerr residual second order N=16 (shortfall from 4x)", _kerr_order(16), 0.05),
]


def run_checks(level="fast", tolerance_scale=1.0):
    """Run the named checks; a check passes when value <= tolerance * scale."""
    checks = FULL if level == "full" else FAST
    results = []
    for name, fn, tol in checks:
        t0 = time.perf_counter()
        value = float(fn())
        tol = tol * tolerance_scale
        results.append(CheckResult(name, value <= tol, value, tol, time.perf_counter() - t0))
    return results
