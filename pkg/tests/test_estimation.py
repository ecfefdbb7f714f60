import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from interferotherm import DerivativeUnderflow, Mirrors, OutOfDomain
from interferotherm.estimation import (
    Estimator,
    Formula,
    estimate_high_T,
    estimate_low_T,
    formula_value,
    resolution_paper,
    resolution_propagated,
)
from interferotherm.interferometer import correction_scale, mean_M
from interferotherm.params import temperature_for_ratio
from interferotherm.verify import oracle_spec

HBAR, K, C = 1.054571817e-34, 1.380649e-23, 2.99792458e8


@pytest.mark.parametrize("mirrors", list(Mirrors))
@pytest.mark.parametrize("chi", [0.0, 1e-8])
def test_high_T_round_trip(paper_spec, paper_T, mirrors, chi):
    spec = paper_spec.with_(chi=chi, mirrors=mirrors)
    for T in np.geomspace(paper_T / 10, 10 * paper_T, 5):
        est = estimate_high_T(spec, mean_M(spec, T, "QuadraticHighT"))
        assert math.isclose(est.T_hat, T, rel_tol=1e-12)
        assert est.valid_domain


def test_high_T_estimator_tags(paper_spec, linear_spec, paper_T):
    obs = mean_M(linear_spec, paper_T, "QuadraticHighT")
    assert estimate_high_T(linear_spec, obs).estimator is Estimator.HIGH_T_ONE
    assert estimate_high_T(paper_spec, mean_M(paper_spec, paper_T, "QuadraticHighT")).estimator is Estimator.KERR_HIGH_T_ONE
    two = linear_spec.with_(mirrors=Mirrors.TWO)
    assert estimate_high_T(two, mean_M(two, paper_T, "QuadraticHighT")).estimator is Estimator.HIGH_T_TWO


def test_high_T_from_plain_count():
    spec = oracle_spec()
    T = 1e3
    obs = mean_M(spec, T, "QuadraticHighT").mean_M
    assert math.isclose(estimate_high_T(spec, obs).T_hat, T, rel_tol=1e-9)


def test_high_T_rejects_no_signal(small_spec):
    with pytest.raises(OutOfDomain):
        estimate_high_T(small_spec, 4.0)
    res = estimate_high_T(small_spec, 4.0, strict=False)
    assert not res.valid_domain and res.T_hat < 0


def test_low_T_three_halves_b(small_spec):
    b = correction_scale(small_spec)
    obs = 4 * (1 - 1.5 * b)
    assert math.isclose(estimate_low_T(small_spec, obs).T_hat, 1 / math.log(3), rel_tol=1e-12)


def test_low_T_domain_edges(small_spec):
    b = correction_scale(small_spec)
    near = estimate_low_T(small_spec, 4 * (1 - b * (1 + 1e-9)))
    assert 0 < near.T_hat < 0.06
    with pytest.raises(OutOfDomain) as err:
        estimate_low_T(small_spec, 4 * (1 - 2 * b))
    assert err.value.bound == "d<2b"
    with pytest.raises(OutOfDomain):
        estimate_low_T(small_spec, 4 * (1 - 0.5 * b))


@pytest.mark.parametrize("ratio", [100.0, 150.0, 300.0])
def test_low_T_round_trip(linear_spec, ratio):
    T = temperature_for_ratio(linear_spec, ratio)
    est = estimate_low_T(linear_spec, mean_M(linear_spec, T, "TwoLevelLowT"))
    assert math.isclose(est.T_hat, T, rel_tol=1e-10)


def test_reference_formulas_by_hand(paper_spec):
    m, w, N = 1e-10, 1e2, 1e10
    k = 1e10 / C
    kp = (1 + 0.5e-8 * (N + 1)) * k
    assert math.isclose(formula_value(paper_spec, "Eq14"), 2 * m * w * w / (N * K * k * k), rel_tol=1e-14)
    assert math.isclose(formula_value(paper_spec, "Eq24"), m * w * w / (N * K * kp * kp), rel_tol=1e-14)
    assert math.isclose(formula_value(paper_spec, "Eq25"), m * w * w / (N * K * kp * kp), rel_tol=1e-14)
    assert math.isclose(formula_value(paper_spec, "Eq25"), 2.50277, rel_tol=1e-5)


def test_formula_selection(linear_spec, paper_spec):
    assert resolution_paper(linear_spec).formula is Formula.EQ14
    assert resolution_paper(linear_spec, Mirrors.TWO).formula is Formula.EQ19
    assert resolution_paper(paper_spec).formula is Formula.EQ24
    assert resolution_paper(paper_spec.with_(eta_detect=0.9)).formula is Formula.EQ25


def test_two_mirrors_halve_linear_resolution(linear_spec):
    one = resolution_paper(linear_spec).delta_T_paper
    two = resolution_paper(linear_spec, Mirrors.TWO).delta_T_paper
    assert math.isclose(one / two, 2.0, rel_tol=1e-14)


def test_resolution_scalings(linear_spec):
    spec = linear_spec.with_(eta_detect=0.5)
    base = formula_value(spec, Formula.EQ25)
    assert math.isclose(formula_value(spec.with_(photon_number=4e10), "Eq25"), base / 4, rel_tol=1e-14)
    assert math.isclose(formula_value(spec.with_(omega_p=3e10), "Eq25"), base / 9, rel_tol=1e-14)
    assert math.isclose(formula_value(spec.with_(eta_detect=0.25), "Eq25"), 2 * base, rel_tol=1e-14)


def test_propagated_derivative_matches_analytic(paper_spec, paper_T):
    rep = resolution_propagated(paper_spec, paper_T, "QuadraticHighT")
    assert math.isclose(rep.dM_dT, rep.dM_dT_analytic, rel_tol=1e-6)
    # N k'^2 K / (2 m w^2) with k' = 51 w_p/c
    kp = 51.000000005e10 / C
    assert math.isclose(-rep.dM_dT, 1e10 * kp * kp * K / (2e-10 * 1e4), rel_tol=1e-6)


def test_propagated_gaussian_slope_agrees(paper_spec, paper_T):
    q = resolution_propagated(paper_spec, paper_T, "QuadraticHighT")
    g = resolution_propagated(paper_spec, paper_T, "ExactGaussian")
    assert math.isclose(q.dM_dT, g.dM_dT, rel_tol=1e-5)
    assert math.isclose(g.delta_M, 1e5, rel_tol=1e-3)
    assert q.paper_delta_M == 1e10
    assert math.isclose(g.noise_to_signal_paper, (1e10 / g.dM_dT) ** 2, rel_tol=1e-12)


def test_propagated_two_mirror_slope_doubles(linear_spec, paper_T):
    one = resolution_propagated(linear_spec, paper_T, "QuadraticHighT")
    two = resolution_propagated(linear_spec, paper_T, "QuadraticHighT", mirrors=Mirrors.TWO)
    assert math.isclose(two.dM_dT / one.dM_dT, 2.0, rel_tol=1e-6)


def test_propagated_shot_noise_limit():
    spec = oracle_spec(N=16, omega_p=1e-4)
    rep = resolution_propagated(spec, 1e3, "ExactGaussian")
    slope = 16 * 1e-8 / 2
    assert math.isclose(rep.delta_M, 4.0, rel_tol=1e-6)
    assert math.isclose(rep.delta_T_propagated, 4.0 / slope, rel_tol=1e-5)


def test_derivative_underflow():
    spec = oracle_spec(N=4, omega_p=1e-20)
    with pytest.raises(DerivativeUnderflow):
        resolution_propagated(spec, 1.0, "ExactGaussian")


@settings(max_examples=30, deadline=None)
@given(st.floats(-10.0, 10.0), st.sampled_from(list(Mirrors)), st.sampled_from([0.0, 1e-8]))
def test_high_T_round_trip_property(log_t, mirrors, chi):
    from interferotherm import paper_experiment

    spec = paper_experiment().with_(chi=chi, mirrors=mirrors)
    T = 72.43 * 10**log_t
    if temperature_for_ratio(spec, 1e-2) > T:
        return
    est = estimate_high_T(spec, mean_M(spec, T, "QuadraticHighT"))
    assert math.isclose(est.T_hat, T, rel_tol=1e-10)
