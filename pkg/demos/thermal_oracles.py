"""
Three ways to average a phase over a thermal mirror
===================================================

The mirror position x enters the interferometer through <cos(k x)>. For a
thermal oscillator the Gaussian characteristic function gives it in closed
form; summing Laguerre diagonal elements over Fock levels gives it again
without assuming Gaussianity. Here both are compared across temperatures.
"""

import numpy as np

from interferotherm.params import temperature_for_ratio
from interferotherm.thermal import laguerre_thermal_sum, make_thermal, thermal_cos_deficit
from interferotherm.verify import oracle_spec

# natural units: hbar = K = c = 1, m = omega = 1
spec = oracle_spec()
k = 0.3

print(f"{'hbar w/KT':>10} {'nbar':>12} {'Gaussian 1-<cos>':>18} {'Laguerre 1-<cos>':>18} {'method':>14}")
for ratio in np.geomspace(1e3, 1e-6, 10):
    osc = make_thermal(spec, temperature_for_ratio(spec, ratio))
    k_here = k * min(1.0, np.sqrt(ratio))  # keep k^2 x_var modest when hot
    s = laguerre_thermal_sum(osc, k_here)
    print(f"{ratio:10.3g} {osc.nbar:12.4g} {thermal_cos_deficit(osc, k_here):18.12e} {s.deficit:18.12e} {s.method:>14}")

# Deep in the quantum regime only the ground state matters, so the deficit
# settles at 1 - exp(-k^2 x_zpf^2 / 2); hot, the direct sum would need
# millions of levels and the Gauss-Meixner rule takes over.
