"""Thermal state of the harmonic-oscillator sample.

The position enters every observable through ``cos(k x)``. Two independent
evaluations of its thermal mean are provided:

* the Gaussian characteristic function ``exp(-k^2 <x^2> / 2)``;
* a sum over Fock levels of the exact diagonal elements
  ``<n|exp(i k x)|n> = exp(-lam2/2) L_n(lam2)`` with ``lam2 = k^2 hbar/(2 m omega)``.

Near the classical limit the phase corrections are tiny (1e-9 and below), so
the level sums work with *deficits* ``1 - <cos>`` and the Laguerre offsets
``L_n - 1`` directly instead of subtracting numbers close to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import eval_laguerre

from .errors import NonPositiveTemperature, TruncationOverflow
from .params import level_ratio

#: Default largest Fock level a direct sum is allowed to reach.
DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class ThermalOscillator:
    beta: float
    ratio: float  # hbar*omega*beta
    nbar: float
    x_zpf: float
    x_var: float

    @property
    def boltzmann_factor(self):
        """e^{-beta hbar omega}, the ratio of successive level populations."""
        return math.exp(-self.ratio)


@dataclass(frozen=True)
class FockDistribution:
    probabilities: np.ndarray
    truncation: int
    tail_mass: float


@dataclass(frozen=True)
class LevelSum:
    """Result of a thermal sum of ``1 - <n|cos(k x)|n>`` over Fock levels.

    ``deficit`` is ``1 - <cos(kx)>``; ``excess`` is the part above the
    ground-state deficit; ``error`` bounds the neglected tail (direct
    sums) or the quadrature error estimate (Gauss-Meixner).
    """

    deficit: float
    excess: float
    error: float
    method: str
    levels: int


def occupation(ratio):
    """Bose-Einstein occupation 1/(e^ratio - 1), safe for huge ratios."""
    if ratio > 700.0:
        return math.exp(-ratio)
    return 1.0 / math.expm1(ratio)


def make_thermal(spec, T):
    if not (T > 0):
        raise NonPositiveTemperature(T)
    c = spec.constants
    ratio = level_ratio(spec, T)
    nbar = occupation(ratio)
    x_zpf = math.sqrt(c.hbar / (2.0 * spec.sample.mass * spec.sample.omega))
    return ThermalOscillator(
        beta=1.0 / (c.boltzmann * T),
        ratio=ratio,
        nbar=nbar,
        x_zpf=x_zpf,
        x_var=x_zpf * x_zpf * (2.0 * nbar + 1.0),
    )


def levels_needed(osc, tol):
    """Smallest n_max with population tail e^{-(n_max+1) ratio} <= tol."""
    if not (0 < tol < 1):
        raise ValueError(f"tol must lie in (0, 1), got {tol!r}")
    n = max(0, math.ceil(-math.log(tol) / osc.ratio) - 1)
    while n > 0 and math.exp(-n * osc.ratio) <= tol:
        n -= 1
    while math.exp(-(n + 1) * osc.ratio) > tol:
        n += 1
    return n


def fock_distribution(osc, tol, cap=DEFAULT_CAP):
    if not (0 < tol < 1):
        raise ValueError(f"tol must lie in (0, 1), got {tol!r}")
    if -math.log(tol) / osc.ratio > cap + 1:
        raise TruncationOverflow(math.ceil(-math.log(tol) / osc.ratio) - 1, cap)
    n_max = levels_needed(osc, tol)
    if n_max > cap:
        raise TruncationOverflow(n_max, cap)
    n = np.arange(n_max + 1)
    p = -math.expm1(-osc.ratio) * np.exp(-n * osc.ratio)
    return FockDistribution(p, n_max, math.exp(-(n_max + 1) * osc.ratio))


def x2_diagonal(n, x_zpf):
    """<n|x^2|n> = (2n+1) x_zpf^2."""
    return (2 * n + 1) * x_zpf * x_zpf


def laguerre_offsets(n_max, x):
    """L_n(x) - 1 for n = 0..n_max via the three-term recurrence.

    Shifting the recurrence by one keeps full relative precision when
    ``n x`` is tiny, where L_n itself would round to 1.
    """
    out = np.empty(n_max + 1)
    out[0] = 0.0
    if n_max == 0:
        return out
    prev, cur = 0.0, -x
    out[1] = cur
    for n in range(1, n_max):
        prev, cur = cur, ((2 * n + 1 - x) * cur - n * prev - x) / (n + 1)
        out[n + 1] = cur
    return out


def laguerre_offset(nu, x):
    """L_nu(x) - 1 for real ``nu >= 0``.

    Uses the hypergeometric series ``sum_j C(nu, j) (-x)^j / j!``, which
    terminates for integer ``nu``; falls back to scipy for large ``nu x``
    where the alternating series would cancel.
    """
    if nu * x > 30.0:
        return float(eval_laguerre(nu, x)) - 1.0
    term = -nu * x
    total = term
    j = 1
    while term != 0.0 and abs(term) > 1e-18 * abs(total):
        term *= -(nu - j) * x / ((j + 1) * (j + 1))
        total += term
        j += 1
        if j > 400:
            break
    return total


def cos_diagonal(n, lam):
    """<n|cos(k x)|n> = exp(-lam^2/2) L_n(lam^2) with lam = k x_zpf."""
    x = lam * lam
    return math.exp(-0.5 * x) * (1.0 + laguerre_offsets(n, x)[n])


def cos_diagonal_deficit(n, lam):
    """1 - cos_diagonal(n, lam), without cancellation."""
    x = lam * lam
    return -math.expm1(-0.5 * x) - math.exp(-0.5 * x) * laguerre_offsets(n, x)[n]


def thermal_cos_exact(osc, k):
    """Thermal mean of cos(k x) from the Gaussian characteristic function."""
    return math.exp(-0.5 * k * k * osc.x_var)


def thermal_cos_deficit(osc, k):
    """1 - thermal_cos_exact(osc, k)."""
    return -math.expm1(-0.5 * k * k * osc.x_var)


def thermal_cos_excess(osc, k):
    """Deficit above its zero-temperature value, kept at full precision."""
    u0 = 0.5 * k * k * osc.x_zpf * osc.x_zpf
    du = k * k * osc.x_zpf * osc.x_zpf * osc.nbar
    return -math.exp(-u0) * math.expm1(-du)


def meixner_rule(nbar, nodes):
    """Gauss quadrature nodes and weights for the geometric law with mean ``nbar``.

    The orthogonal polynomials of p_n = (1-q) q^n are Meixner polynomials
    (beta=1, c=q); their monic recurrence gives the Jacobi matrix
    diag (2j+1) nbar + j, off-diagonal j sqrt(nbar (nbar+1)).
    """
    j = np.arange(nodes, dtype=float)
    scale = nbar + 1.0
    diag = ((2 * j + 1) * nbar + j) / scale
    off = j[1:] * math.sqrt(nbar * (nbar + 1.0)) / scale
    vals, vecs = eigh_tridiagonal(diag, off)
    return vals * scale, vecs[0] ** 2


def _meixner_excess(osc, x, nodes):
    nu, w = meixner_rule(osc.nbar, nodes)
    offs = np.array([laguerre_offset(v, x) for v in np.clip(nu, 0.0, None)])
    return float(-math.exp(-0.5 * x) * np.dot(w, offs))


#: Gauss-Meixner needs L_nu(x) smooth on the scale of nbar; beyond this
#: value of nbar * x the quadrature is refused.
MEIXNER_MAX_PHASE = 10.0
# forward recurrence rounding grows roughly like levels**1.5 * eps, so long
# direct sums hand over to the quadrature once it is usable
DIRECT_LIMIT = 10**4


def laguerre_thermal_sum(osc, k, tol=None, cap=DEFAULT_CAP, nodes=32):
    """Thermal mean of 1 - cos(k x) summed over Fock levels.

    Levels are summed directly while the truncation fits under ``cap`` (and
    under ``DIRECT_LIMIT`` whenever the quadrature applies). Beyond that the
    geometric sum is evaluated by Gauss-Meixner quadrature,
    with the difference between ``nodes`` and ``nodes // 2`` points as the
    error estimate. The default ``tol`` keeps the dropped population far
    below the first excited level so the thermal excess survives at low T.

    Raises
    ------
    TruncationOverflow
        Too many levels for a direct sum and a phase too large for the
        quadrature.
    """
    x = k * k * osc.x_zpf * osc.x_zpf
    d0 = -math.expm1(-0.5 * x)
    if tol is None:
        tol = max(1e-300, min(1e-15, 1e-16 * osc.boltzmann_factor))
    quad_ok = osc.nbar * x <= MEIXNER_MAX_PHASE
    try:
        if quad_ok and levels_needed(osc, tol) > DIRECT_LIMIT:
            raise TruncationOverflow(levels_needed(osc, tol), DIRECT_LIMIT)
        dist = fock_distribution(osc, tol, cap)
    except TruncationOverflow:
        if not quad_ok:
            raise
        excess = _meixner_excess(osc, x, nodes)
        coarse = _meixner_excess(osc, x, nodes // 2)
        return LevelSum(d0 + excess, excess, abs(excess - coarse), "gauss-meixner", nodes)

    offs = laguerre_offsets(dist.truncation, x)
    p = dist.probabilities
    excess = float(-math.exp(-0.5 * x) * np.dot(p, offs))
    deficit = d0 * float(p.sum()) + excess
    levels = dist.truncation + 1
    rounding = levels**1.5 * np.finfo(float).eps * abs(deficit)
    return LevelSum(deficit, excess, 2.0 * dist.tail_mass + rounding, "direct", levels)
