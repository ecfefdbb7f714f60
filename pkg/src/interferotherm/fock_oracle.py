"""Brute-force truncated Fock-space checks of the interferometer algebra.

Only optical modes are represented as matrices. The mirror position
commutes with every photon number, so for an arm unitary
U = exp(-i kappa x E(n)) the thermal average of U^dag O U is O with each
element (a, b) multiplied by <cos(kappa (E_a - E_b) x)>, which is evaluated
as a sum over mechanical Fock levels. Interior-block comparisons drop the
last two basis states, where truncation breaks the ladder algebra.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import OracleCapExceeded, TruncationTooSmall
from .interferometer import FOCK_PHOTON_CAP, MeasurementModel, MeasurementStats, effective_frequency
from .params import Mirrors, validate
from .thermal import fock_distribution, laguerre_offsets, laguerre_thermal_sum, make_thermal

EDGE = 2


class TruncatedMode:
    """Single bosonic mode cut off after ``dim`` Fock states."""

    def __init__(self, dim):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.lowering = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)

    @property
    def raising(self):
        return self.lowering.conj().T

    @property
    def number(self):
        return self.raising @ self.lowering

    def commutator(self):
        return self.lowering @ self.raising - self.raising @ self.lowering


def coherent_state(amplitude, dim, atol=1e-10):
    """Fock amplitudes of |amplitude>, renormalized after truncation.

    Raises
    ------
    TruncationTooSmall
        If more than ``atol`` of the norm falls outside ``dim`` states.
    """
    c = np.empty(dim, dtype=complex)
    c[0] = math.exp(-0.5 * abs(amplitude) ** 2)
    for n in range(1, dim):
        c[n] = c[n - 1] * amplitude / math.sqrt(n)
    norm2 = float(np.vdot(c, c).real)
    if 1.0 - norm2 > atol:
        raise TruncationTooSmall(f"coherent state |{amplitude}> keeps only {norm2:.12f} of its norm in {dim} states")
    return c / math.sqrt(norm2)


def _interior(m):
    return m[:-EDGE, :-EDGE]


def verify_phase_identity(dim, phase):
    """Max deviation of U^dag A U from e^{-i phase} A on the interior block."""
    if dim < 3:
        raise ValueError("dim must be at least 3")
    mode = TruncatedMode(dim)
    n = np.diag(mode.number).real
    U = np.diag(np.exp(-1j * phase * n))
    lhs = U.conj().T @ mode.lowering @ U
    rhs = np.exp(-1j * phase) * mode.lowering
    return float(np.max(np.abs(_interior(lhs - rhs))))


def verify_kerr_identity(dim, theta, chi):
    """Max deviation of the Kerr-conjugated lowering operator from
    e^{-i theta (1 + chi/2)} e^{-i theta chi n} A on the interior block."""
    if dim < 3:
        raise ValueError("dim must be at least 3")
    mode = TruncatedMode(dim)
    n = np.diag(mode.number).real
    U = np.diag(np.exp(-1j * theta * (n + 0.5 * chi * n * n)))
    lhs = U.conj().T @ mode.lowering @ U
    rhs = np.exp(-1j * theta * (1 + 0.5 * chi)) * np.diag(np.exp(-1j * theta * chi * n)) @ mode.lowering
    return float(np.max(np.abs(_interior(lhs - rhs))))


class _Arm:
    """Optical mode of one arm, with or without a thermalized mirror."""

    def __init__(self, dim, energies, kappa, osc):
        self.mode = TruncatedMode(dim)
        self.energies = energies
        self.kappa = kappa
        self.osc = osc
        self._cache = {}

    def _coherence(self, q):
        # thermal <cos(q x)> summed over mechanical levels
        if self.osc is None or q == 0.0:
            return 1.0
        key = round(q / self.kappa, 12) if self.kappa else q
        if key not in self._cache:
            self._cache[key] = 1.0 - laguerre_thermal_sum(self.osc, abs(q)).deficit
        return self._cache[key]

    def average(self, op):
        """Thermal average of U^dag op U, U = exp(-i kappa x E(n))."""
        out = np.zeros_like(op)
        rows, cols = np.nonzero(op)
        for a, b in zip(rows, cols):
            q = self.kappa * (self.energies[a] - self.energies[b])
            out[a, b] = op[a, b] * self._coherence(q)
        return out


def default_dim(photon_number):
    return int(math.ceil(photon_number + 10.0 * math.sqrt(photon_number))) + 12


def exact_M_stats(spec, T, mirrors=None, kerr_on=None, dims=None, photon_cap=FOCK_PHOTON_CAP):
    """Exact <M>, <M^2> and Delta M in truncated Fock space.

    Both arm lengths are measured from the balanced position, so an arm
    without a sample accumulates no phase. The Kerr phase uses the full
    photon-number dependence; no A^dag A -> N replacement is made.

    Parameters
    ----------
    mirrors, kerr_on
        Override the configuration in ``spec``; ``kerr_on=False`` drops chi.
    dims
        Optical dimension per arm (int or pair); defaults to N + 10 sqrt(N) + 12.
    """
    spec = validate(spec)
    N = spec.light.photon_number
    if N > photon_cap:
        raise OracleCapExceeded(N, photon_cap)
    mirrors = spec.mirrors if mirrors is None else mirrors
    chi = spec.kerr.chi if (kerr_on is None or kerr_on) else 0.0
    if dims is None:
        dims = default_dim(N)
    if isinstance(dims, int):
        dims = (dims, dims)

    kappa = spec.light.refractive_index * spec.light.omega_p / spec.constants.light_speed
    osc = make_thermal(spec, T)
    beta = math.sqrt(N / 2.0)
    arms = []
    states = []
    for j, dim in enumerate(dims, start=1):
        n = np.arange(dim, dtype=float)
        has_sample = j == 2 or mirrors is Mirrors.TWO
        arms.append(_Arm(dim, n + 0.5 * chi * n * n, kappa, osc if has_sample else None))
        states.append(coherent_state(beta, dim))

    def expect(j, op):
        arm, psi = arms[j], states[j]
        return np.vdot(psi, arm.average(op) @ psi)

    a1, a2 = arms[0].mode.lowering, arms[1].mode.lowering
    x12 = np.conj(expect(1, a2)) * expect(0, a1)  # <A2^dag A1>
    pair = np.conj(expect(1, a2 @ a2)) * expect(0, a1 @ a1)  # <A2^dag^2 A1^2>
    n1 = expect(0, arms[0].mode.number).real
    n2 = expect(1, arms[1].mode.number).real

    eta = spec.loss.efficiency
    mean = eta * 2.0 * x12
    m2 = eta * eta * (2.0 * pair + 2.0 * n1 * n2) + eta * (n1 + n2)
    for value in (mean, m2):
        if abs(value.imag) > 1e-10 * max(1.0, abs(value.real)):
            raise ArithmeticError(f"non-Hermitian residue {value.imag!r} in Fock expectation")
    mean, m2 = float(mean.real), float(m2.real)
    n_det = eta * N
    var = m2 - mean * mean
    return MeasurementStats(
        mean_M=mean,
        mean_M2=m2,
        delta_M=math.sqrt(max(0.0, var)),
        paper_delta_M=n_det,
        model=MeasurementModel.FOCK_BRUTE_FORCE,
        effective_omega_p=effective_frequency(spec),
        detected_photons=n_det,
        deficit=1.0 - mean / n_det if n_det else 0.0,
        excess=None,
        mirrors=mirrors,
    )


def exact_two_mirror_phase(osc, k, tol=1e-15, cap=20000):
    """<cos(k (x1 - x2))> for two independent identical thermal samples.

    Evaluated as the explicit double sum over both samples' Fock levels of
    p_n p_m <n|e^{ikx}|n><m|e^{-ikx}|m>. Returns ``(value, deficit)``.
    """
    x = k * k * osc.x_zpf * osc.x_zpf
    dist = fock_distribution(osc, tol, cap)
    d = -math.expm1(-0.5 * x) - math.exp(-0.5 * x) * laguerre_offsets(dist.truncation, x)
    p = dist.probabilities
    pp = np.outer(p, p)
    deficit = float(np.sum(pp * (d[:, None] + d[None, :] - np.outer(d, d))))
    deficit += 1.0 - float(pp.sum())
    return 1.0 - deficit, deficit
