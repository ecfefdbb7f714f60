"""
Reading a temperature off the photon count
==========================================

At the reference operating point (a nanogram oscillator at 100 rad/s,
1e10 photons, a Kerr gas with chi = 1e-8) the thermal signal is a
fractional dip of about 1e-9 in <M>. This walks through forward model,
inversion and the two resolution estimates.
"""

from interferotherm import classify_regime, paper_experiment, paper_temperature, small_phase_parameter
from interferotherm.estimation import estimate_high_T, resolution_propagated
from interferotherm.interferometer import effective_frequency, mean_M, second_moment

spec = paper_experiment()
T = paper_temperature()  # K T = 1e-21 J

regime = classify_regime(spec, T)
print(f"T = {T:.4f} K, hbar w/KT = {regime.ratio:.3e} -> {regime.tag.value}")
print(f"omega_p'/omega_p = {effective_frequency(spec) / spec.light.omega_p:.9f}")
print(f"small-phase parameter = {small_phase_parameter(spec, T):.3e}")

# forward model: quadratic high-T form against the exact Gaussian average
q = mean_M(spec, T, "QuadraticHighT")
g = second_moment(spec, T, "ExactGaussian")
print(f"1 - <M>/N: quadratic {q.deficit:.12e}, Gaussian {g.deficit:.12e}")

# inversion; passing the stats object keeps the 1e-9 deficit at full precision
est = estimate_high_T(spec, q)
print(f"estimated T = {est.T_hat:.12f} K ({est.estimator.value})")

rep = resolution_propagated(spec, T, "QuadraticHighT")
print(f"closed-form dT ({rep.formula.value}) = {rep.delta_T_paper:.4g} K")
print(f"d<M>/dT = {rep.dM_dT:.5g} per K")
print(f"propagated dT with exact Delta M = {rep.delta_M:.4g}: {rep.delta_T_propagated:.4g} K")
print(f"propagated dT with Delta M = N:  {rep.delta_T_paper_spread:.4g} K")
