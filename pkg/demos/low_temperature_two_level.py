"""
The two-level thermometer
=========================

When hbar w >> K T only the ground and first excited mechanical levels are
populated, and the deficit d of <M> lies between b and 2b, with b the
zero-point correction. Inverting the two-level form recovers T even when
the excited population is e^-300.
"""

import math

from interferotherm.estimation import estimate_low_T
from interferotherm.interferometer import correction_scale, mean_M
from interferotherm.params import paper_experiment, temperature_for_ratio
from interferotherm.verify import oracle_spec

spec = paper_experiment().with_(chi=0.0)
b = correction_scale(spec)
print(f"b = {b:.6e}")

for ratio in (100.0, 150.0, 300.0):
    T = temperature_for_ratio(spec, ratio)
    two = mean_M(spec, T, "TwoLevelLowT")
    lag = mean_M(spec, T, "LaguerreSum")
    est = estimate_low_T(spec, two)
    print(f"hbar w/KT = {ratio:5.0f}: excess over b {two.excess:.4e} (Laguerre {lag.excess:.4e}), "
          f"T = {T:.4e} K, estimate {est.T_hat:.4e} K")

# d = 3b/2 sits half way up the two-level ladder: T = hbar w / (K ln 3).
# At the reference point b ~ 3e-24 is far below float resolution of a raw
# count, so use natural units where b is ~1e-2.
small = oracle_spec()
b = correction_scale(small)
mid = estimate_low_T(small, small.light.photon_number * (1 - 1.5 * b))
print(f"d = 3b/2 -> K T / hbar w = {mid.T_hat:.12f}, 1/ln 3 = {1 / math.log(3):.12f}")
