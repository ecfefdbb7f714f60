import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm
from scipy.special import eval_laguerre

from interferotherm import NonPositiveTemperature, TruncationOverflow
from interferotherm.params import temperature_for_ratio
from interferotherm.thermal import (
    cos_diagonal,
    cos_diagonal_deficit,
    fock_distribution,
    laguerre_offsets,
    laguerre_thermal_sum,
    make_thermal,
    meixner_rule,
    thermal_cos_deficit,
    thermal_cos_exact,
    thermal_cos_excess,
    x2_diagonal,
)
from interferotherm.fock_oracle import TruncatedMode


def osc_at(spec, ratio):
    return make_thermal(spec, temperature_for_ratio(spec, ratio))


def test_nbar_one_at_ln2(small_spec):
    osc = osc_at(small_spec, math.log(2))
    assert math.isclose(osc.nbar, 1.0, rel_tol=1e-14)


def test_ground_state_limit(small_spec):
    osc = osc_at(small_spec, 1e3)
    assert osc.nbar < 1e-430 or osc.nbar == 0.0
    assert osc.x_var == osc.x_zpf**2


def test_nbar_classical_expansion(paper_spec, paper_T):
    osc = make_thermal(paper_spec, paper_T)
    c = paper_spec.constants
    expansion = c.boltzmann * paper_T / (c.hbar * paper_spec.sample.omega) - 0.5
    assert math.isclose(osc.nbar, expansion, rel_tol=1e-6)


def test_make_thermal_rejects_zero(small_spec):
    with pytest.raises(NonPositiveTemperature):
        make_thermal(small_spec, 0.0)


def test_fock_distribution_halving(small_spec):
    dist = fock_distribution(osc_at(small_spec, math.log(2)), 0.26)
    assert dist.truncation == 1
    np.testing.assert_allclose(dist.probabilities, [0.5, 0.25], rtol=1e-14)
    assert math.isclose(dist.tail_mass, 0.25, rel_tol=1e-14)


def test_low_T_keeps_at_most_two_levels(small_spec):
    dist = fock_distribution(osc_at(small_spec, 100.0), 1e-3)
    assert dist.truncation <= 1


@pytest.mark.parametrize("ratio", [1e-2, 0.3, 2.0])
@pytest.mark.parametrize("tol", [1e-3, 1e-8, 1e-14])
def test_fock_distribution_normalized_and_minimal(small_spec, ratio, tol):
    osc = osc_at(small_spec, ratio)
    dist = fock_distribution(osc, tol)
    assert abs(dist.probabilities.sum() + dist.tail_mass - 1.0) < 1e-12
    assert dist.tail_mass <= tol
    if dist.truncation > 0:
        assert math.exp(-dist.truncation * osc.ratio) > tol


def test_high_T_weighted_sum_matches_closed_form(small_spec):
    osc = osc_at(small_spec, 1e-2)
    tol = 1e-12
    dist = fock_distribution(osc, tol)
    n = np.arange(dist.truncation + 1)
    brute = float(np.sum(dist.probabilities * (2 * n + 1)))
    assert abs(brute - (2 * osc.nbar + 1)) <= tol * (2 * dist.truncation + 1) + 1e-9 * brute


def test_truncation_overflow_reports_cap(paper_spec, paper_T):
    with pytest.raises(TruncationOverflow) as err:
        fock_distribution(make_thermal(paper_spec, paper_T), 1e-6)
    assert err.value.cap == 10**6


def test_x2_diagonal_against_matrix():
    x_zpf = 0.37
    mode = TruncatedMode(40)
    x = x_zpf * (mode.lowering + mode.raising)
    x2 = (x @ x).real
    assert math.isclose(x2_diagonal(0, x_zpf), x_zpf**2)
    assert math.isclose(x2_diagonal(1, x_zpf), 3 * x_zpf**2)
    for n in range(39):
        assert math.isclose(x2_diagonal(n, x_zpf), x2[n, n], rel_tol=1e-10)


def test_cos_diagonal_simple_values():
    assert math.isclose(cos_diagonal(0, 0.4), math.exp(-0.08), rel_tol=1e-15)
    assert abs(cos_diagonal(1, 1.0)) < 1e-15


def test_cos_diagonal_against_matrix_exponential():
    lam = 0.3
    mode = TruncatedMode(60)
    U = expm(1j * lam * (mode.lowering + mode.raising))
    for n in (0, 1, 5, 12):
        assert abs(cos_diagonal(n, lam) - U[n, n].real) < 1e-9
    assert abs(cos_diagonal(5, lam) - U[5, 5].real) < 1e-12


def test_laguerre_offsets_against_scipy():
    x = 0.7
    offs = laguerre_offsets(30, x)
    np.testing.assert_allclose(1 + offs, eval_laguerre(np.arange(31), x), rtol=1e-12, atol=1e-14)


def test_laguerre_offsets_keep_precision_for_tiny_argument():
    x = 1e-21
    offs = laguerre_offsets(10, x)
    # L_n(x) - 1 = -n x + n(n-1) x^2 / 4 - ...
    np.testing.assert_allclose(offs[1:], -np.arange(1, 11) * x, rtol=1e-14)


def test_thermal_cos_simple_limits(small_spec):
    osc = osc_at(small_spec, 0.5)
    assert thermal_cos_exact(osc, 0.0) == 1.0
    cold = osc_at(small_spec, 1e3)
    k = 0.3
    c = small_spec.constants
    expected = math.exp(-k * k * c.hbar / (4 * small_spec.sample.mass * small_spec.sample.omega))
    assert math.isclose(thermal_cos_exact(cold, k), expected, rel_tol=1e-14)


@pytest.mark.parametrize("ratio", [0.05, 0.5, 3.0, 50.0])
@pytest.mark.parametrize("k", [1e-6, 0.1, 0.5])
def test_gaussian_and_laguerre_sum_agree(small_spec, ratio, k):
    osc = osc_at(small_spec, ratio)
    s = laguerre_thermal_sum(osc, k)
    assert s.method == "direct"
    assert abs(s.deficit - thermal_cos_deficit(osc, k)) <= max(1e-10 * thermal_cos_deficit(osc, k), s.error)
    assert math.isclose(s.excess, thermal_cos_excess(osc, k), rel_tol=1e-9, abs_tol=1e-300)


def test_meixner_route_matches_direct_sum(small_spec):
    osc = osc_at(small_spec, 1e-2)
    k = 1e-2
    direct = laguerre_thermal_sum(osc, k)
    quad = laguerre_thermal_sum(osc, k, cap=10)
    assert direct.method == "direct" and quad.method == "gauss-meixner"
    assert math.isclose(quad.deficit, direct.deficit, rel_tol=1e-11)


@pytest.mark.parametrize("ratio", [1e-3, 1e-5, 1e-9])
def test_meixner_route_matches_gaussian(small_spec, ratio):
    osc = osc_at(small_spec, ratio)
    k = 1e-3 * math.sqrt(ratio / 1e-3)
    s = laguerre_thermal_sum(osc, k)
    assert s.method == "gauss-meixner"
    assert math.isclose(s.deficit, thermal_cos_deficit(osc, k), rel_tol=1e-12)


def test_direct_sum_error_estimate_is_honest(small_spec):
    osc = osc_at(small_spec, 1e-4)
    k = 0.1
    s = laguerre_thermal_sum(osc, k, tol=1e-15)
    assert s.method == "direct"
    assert abs(s.deficit - thermal_cos_deficit(osc, k)) <= s.error


def test_meixner_rule_reproduces_geometric_moments():
    nbar = 3.7
    n, w = meixner_rule(nbar, 6)
    assert math.isclose(w.sum(), 1.0, rel_tol=1e-13)
    assert math.isclose((w * n).sum(), nbar, rel_tol=1e-12)
    # second factorial moment of the geometric law is 2 nbar^2
    assert math.isclose((w * n * (n - 1)).sum(), 2 * nbar**2, rel_tol=1e-12)


def test_meixner_refused_for_large_phase(small_spec):
    with pytest.raises(TruncationOverflow):
        laguerre_thermal_sum(osc_at(small_spec, 1e-4), 1.0, cap=10)


def test_second_order_residual_scaling(small_spec):
    osc = osc_at(small_spec, 0.5)

    def residual(k):
        return abs(thermal_cos_deficit(osc, k) - 0.5 * k * k * osc.x_var)

    for k in (0.2, 0.1, 0.05):
        assert residual(k) / residual(k / 2) >= 14.0


@given(st.integers(0, 60), st.floats(0.0, 5.0))
def test_cos_diagonal_bounded(n, lam):
    assert abs(cos_diagonal(n, lam)) <= 1.0 + 1e-12
    assert math.isclose(1 - cos_diagonal(n, lam), cos_diagonal_deficit(n, lam), abs_tol=1e-12)


@settings(max_examples=50)
@given(st.floats(1e-3, 10.0), st.floats(1e-3, 2.0), st.floats(1.01, 3.0))
def test_thermal_cos_decreasing(ratio, k, factor):
    from interferotherm.verify import oracle_spec

    spec = oracle_spec()
    osc = osc_at(spec, ratio)
    c = thermal_cos_exact(osc, k)
    assert 0 <= c <= 1
    assert thermal_cos_exact(osc, k * factor) < c or c == 0.0
    hotter = osc_at(spec, ratio / factor)
    assert thermal_cos_exact(hotter, k) <= c
