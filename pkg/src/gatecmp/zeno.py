"""Closed-form model of the quantum Zeno gate.

Two evanescently coupled resonators swap a lone photon in the time
``t_s = pi hbar / 2 eps``. When each resonator holds one photon, strong
two-photon absorption suppresses the doubly occupied states and leaves
``|1,1>`` in place, which supplies the conditional pi phase.

Everything here is expressed through dimensionless products with the
swap time (``R1 t_s``, ``R2 t_s``, ``Omega0 t_s``), so the overflow-prone
exponentials can be combined in the log domain.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from gatecmp.errors import NonPositiveCoupling
from gatecmp.params import DimensionalParams, GateEnvironment, ZenoTuning

__all__ = [
    "ZenoRates",
    "ZenoTransition",
    "zeno_rates",
    "zeno_rates_dimensional",
    "zeno_rates_values",
    "log_alpha",
    "zeno_success",
    "zeno_success_value",
    "zeno_cz_success_value",
    "swap_fidelity",
]

# below this |radicand| the cosh/sinhc pair is replaced by its Taylor series
_SERIES_CUTOFF = 1e-6


@dataclass(frozen=True)
class ZenoRates:
    """Loss and absorption rates multiplied by the swap time.

    Attributes
    ----------
    r1_ts : float
        Linear loss rate of ``|1,1>`` times ``t_s``.
    r2_ts : float
        Two-photon absorption rate of ``|2,0>``, ``|0,2>`` times ``t_s``.
    radicand : float
        ``(Omega0 t_s)^2 = (R2 t_s / 4)^2 - pi^2``. Negative on the
        oscillatory (weak absorption) branch.
    swap_loss_ts : float
        Linear loss rate of the single-photon states times ``t_s``.
    swap_time : float
        ``t_s`` in units of ``1 / kappa`` (or seconds on the dimensional path).
    """

    r1_ts: float
    r2_ts: float
    radicand: float
    swap_loss_ts: float
    swap_time: float

    @property
    def omega0_ts(self) -> complex:
        """Effective rate times ``t_s``; purely imaginary on the oscillatory branch."""
        return cmath.sqrt(self.radicand)

    @property
    def hyperbolic(self) -> bool:
        return self.radicand >= 0


@dataclass(frozen=True)
class ZenoTransition:
    """Nonzero entries of the effective transition matrix in the basis
    ``|00>, |01>, |10>, |11>``.

    ``amp_11`` is real and carries a sign: it is positive when the gate
    applies the conditional pi phase and negative when absorption is too
    weak and the photons simply swap back.
    """

    amp_00: float
    amp_01_swap: complex
    amp_10_swap: complex
    amp_11: float
    success: float
    log_success: float

    @property
    def conditional_phase_ok(self) -> bool:
        return self.amp_11 > 0


def zeno_rates_values(gamma_r, omega, n_atoms, eps_kappa, Delta_r):
    """Array-friendly core of :func:`zeno_rates`.

    Returns ``(r1_ts, r2_ts, radicand, swap_loss_ts, swap_time)``.
    """
    lower = 4 * Delta_r**2 + 1
    ngr = n_atoms * gamma_r
    om2 = omega**2
    swap_time = np.pi / (2 * eps_kappa)
    r1_ts = swap_time * (1 + 4 * (1 + ngr) * om2 / lower)
    swap_loss_ts = swap_time * (1 + 4 * ngr * om2 / lower)
    q = 2 * ngr * om2 * om2 / (eps_kappa * lower)
    r2_ts = 4 * np.pi * q
    radicand = np.pi**2 * (q * q - 1)
    return r1_ts, r2_ts, radicand, swap_loss_ts, swap_time


def zeno_rates(env: GateEnvironment, t: ZenoTuning) -> ZenoRates:
    if t.eps_kappa <= 0:
        raise NonPositiveCoupling("eps_kappa must be > 0")
    values = zeno_rates_values(env.gamma_r, env.omega, env.n_atoms, t.eps_kappa, t.Delta_r)
    return ZenoRates(*(float(v) for v in values))


def zeno_rates_dimensional(p: DimensionalParams) -> ZenoRates:
    """Rates from the raw parameters, with ``delta`` ignored (pinned to zero).

    Used to cross-check the dimensionless expressions.
    """
    if p.eps <= 0:
        raise NonPositiveCoupling("eps must be > 0")
    if p.gamma3 <= 0:
        raise NonPositiveCoupling("gamma3 must be > 0 for a finite absorption rate")
    n = p.n_atoms
    lower = 4 * p.Delta**2 + p.gamma2**2
    rho22 = 4 * p.g1**2 / (p.hbar**2 * lower)
    r1 = p.kappa + rho22 * (p.kappa + n * p.gamma2)
    r_swap = p.kappa + rho22 * n * p.gamma2
    r2 = 16 * n * p.g1**2 * p.g2**2 / (p.hbar**4 * lower * p.gamma3)
    ts = math.pi * p.hbar / (2 * p.eps)
    omega0_sq = (r2**2 * p.hbar**2 - 64 * p.eps**2) / (16 * p.hbar**2)
    return ZenoRates(
        r1_ts=r1 * ts,
        r2_ts=r2 * ts,
        radicand=omega0_sq * ts**2,
        swap_loss_ts=r_swap * ts,
        swap_time=ts,
    )


def log_alpha(radicand, r2_ts):
    """Sign and log-magnitude of ``cosh(x) + (R2 t_s / 4) sinh(x) / x``.

    ``x = sqrt(radicand)``. A negative radicand selects the analytic
    continuation ``cos(y) + (R2 t_s / 4) sin(y) / y`` with
    ``y = sqrt(-radicand)``. Works elementwise on arrays.
    """
    x2 = np.asarray(radicand, dtype=float)
    h = np.asarray(r2_ts, dtype=float) / 4
    with np.errstate(all="ignore"):
        x = np.sqrt(np.abs(x2))
        small = np.abs(x2) < _SERIES_CUTOFF
        big = x2 >= 1.0

        # series in the signed radicand covers both branches near x = 0
        series = (1 + x2 / 2 + x2 * x2 / 24) + h * (1 + x2 / 6 + x2 * x2 / 120)
        hyper = np.cosh(x) + h * np.sinh(x) / x
        osc = np.cos(x) + h * np.sin(x) / x
        direct = np.where(small, series, np.where(x2 > 0, hyper, osc))

        rho = h / x
        log_big = x + np.log((1 + rho) / 2 + (1 - rho) * np.exp(-2 * x) / 2)

        sign = np.where(big, 1.0, np.sign(direct))
        logmag = np.where(big, log_big, np.log(np.abs(direct)))
    return sign, logmag


def zeno_success_value(gamma_r, omega, n_atoms, eps_kappa, Delta_r):
    """Vectorized success probability and signed ``|1,1>`` amplitude."""
    r1_ts, r2_ts, radicand, _, _ = zeno_rates_values(
        gamma_r, omega, n_atoms, eps_kappa, Delta_r
    )
    sign, logmag = log_alpha(radicand, r2_ts)
    log_amp = logmag - (r1_ts + r2_ts / 4)
    with np.errstate(under="ignore"):
        return np.exp(2 * log_amp), sign * np.exp(log_amp)


def zeno_cz_success_value(gamma_r, omega, n_atoms, eps_kappa, Delta_r):
    """Success probability restricted to tunings that give the pi phase.

    Where the ``|1,1>`` amplitude is not positive the photons swap back
    with the linear phase instead of the conditional one; those points
    score ``-inf`` so an optimizer cannot mistake them for a working gate.
    """
    success, amp = zeno_success_value(gamma_r, omega, n_atoms, eps_kappa, Delta_r)
    return np.where(amp > 0, success, -np.inf)


def zeno_success(env: GateEnvironment, t: ZenoTuning) -> ZenoTransition:
    """Effective transition amplitudes and two-photon success probability."""
    rates = zeno_rates(env, t)
    sign, logmag = log_alpha(rates.radicand, rates.r2_ts)
    sign, logmag = float(sign), float(logmag)
    log_amp = logmag - (rates.r1_ts + rates.r2_ts / 4)
    swap = -1j * math.exp(-rates.swap_loss_ts / 2)
    return ZenoTransition(
        amp_00=1.0,
        amp_01_swap=swap,
        amp_10_swap=swap,
        amp_11=sign * math.exp(log_amp),
        success=math.exp(2 * log_amp),
        log_success=2 * log_amp,
    )


def swap_fidelity(env: GateEnvironment, t: ZenoTuning) -> float:
    """Probability that a lone photon survives the swap, ``exp(-r1 t_s)``."""
    return math.exp(-zeno_rates(env, t).swap_loss_ts)
