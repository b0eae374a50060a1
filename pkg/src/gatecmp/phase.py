"""Closed-form model of the Kerr (nonlinear phase) gate.

Two photons sit in one resonator while off-resonant three-level atoms
produce a fourth-order energy shift. The gate runs until that shift has
accumulated a pi phase; the success probability is one minus the
probability of losing a photon to the cavity or to atomic decay during
that time.

In the dimensionless path energies are in units of ``hbar * Gamma`` and
times in units of ``1 / Gamma``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from gatecmp.errors import DegenerateTuning, PerturbativityWarning
from gatecmp.params import DimensionalParams, GateEnvironment, PhaseTuning

__all__ = [
    "PerturbedPopulations",
    "PhaseGateResult",
    "DEGENERACY_RTOL",
    "PERTURBATIVE_LIMIT",
    "fourth_order_shift",
    "real_shift_expanded",
    "phase_populations",
    "phase_success",
    "phase_success_dimensional",
    "phase_gate_time",
    "phase_loss_terms",
    "phase_success_value",
]

DEGENERACY_RTOL = 1e-12
PERTURBATIVE_LIMIT = 0.1


@dataclass(frozen=True)
class PerturbedPopulations:
    rho11: float
    rho22: float
    rho33: float

    @property
    def perturbative(self) -> bool:
        return self.rho22 <= PERTURBATIVE_LIMIT and self.rho33 <= PERTURBATIVE_LIMIT


@dataclass(frozen=True)
class PhaseGateResult:
    """Success probability of one phase-gate run and its loss breakdown.

    ``success`` is the raw truncated expansion ``1 - sum(losses)``; it is
    not clamped, so bad tunings can yield negative values. ``valid`` is
    False in that case or when any single loss term exceeds one.
    """

    energy_shift_re: float
    gate_time: float
    loss_cavity_two_photon: float
    loss_cavity_virtual: float
    loss_atomic_intermediate: float
    loss_atomic_upper: float
    success: float

    @property
    def losses(self) -> dict[str, float]:
        return {
            "cavity_two_photon": self.loss_cavity_two_photon,
            "cavity_virtual": self.loss_cavity_virtual,
            "atomic_intermediate": self.loss_atomic_intermediate,
            "atomic_upper": self.loss_atomic_upper,
        }

    @property
    def failure(self) -> float:
        return sum(self.losses.values())

    @property
    def valid(self) -> bool:
        return self.success >= 0 and all(v <= 1 for v in self.losses.values())


# --------------------------------------------------------------------------
# dimensional forms
# --------------------------------------------------------------------------


def fourth_order_shift(p: DimensionalParams) -> complex:
    """Fourth-order ground-state energy shift with complex detunings.

    ``|g1|^2 |g2|^2 / (hbar^3 (Delta + i Gamma2/2)^2 (delta + i Gamma3/2))``
    """
    lower = complex(p.Delta, p.gamma2 / 2)
    upper = complex(p.delta, p.gamma3 / 2)
    return (p.g1**2 * p.g2**2) / (p.hbar**3 * lower**2 * upper)


def _signed_denominator(p: DimensionalParams) -> float:
    return 4 * p.delta * p.Delta**2 - 2 * p.gamma2 * p.gamma3 * p.Delta - p.gamma2**2 * p.delta


def real_shift_expanded(p: DimensionalParams) -> float:
    """Real part of the fourth-order shift, written out in real arithmetic."""
    lower = 4 * p.Delta**2 + p.gamma2**2
    upper = 4 * p.delta**2 + p.gamma3**2
    return 16 * p.g1**2 * p.g2**2 * _signed_denominator(p) / (p.hbar**3 * lower**2 * upper)


def _check_dimensional_denominator(p: DimensionalParams) -> float:
    den = abs(_signed_denominator(p))
    scale = max(abs(4 * p.delta * p.Delta**2), 2 * p.gamma2 * p.gamma3 * abs(p.Delta),
                p.gamma2**2 * abs(p.delta))
    if not den > DEGENERACY_RTOL * scale or den == 0.0:
        raise DegenerateTuning("phase-shift denominator vanishes; gate time is infinite")
    return den


def phase_gate_time(p: DimensionalParams) -> float:
    """Time for the N-atom shift to accumulate a pi phase."""
    den = _check_dimensional_denominator(p)
    lower = 4 * p.Delta**2 + p.gamma2**2
    upper = 4 * p.delta**2 + p.gamma3**2
    return (math.pi * p.hbar**4 * lower**2 * upper) / (
        16 * p.n_atoms * p.g1**2 * p.g2**2 * den
    )


def phase_success_dimensional(p: DimensionalParams) -> PhaseGateResult:
    """Success probability from the dimensional loss formulas.

    Each channel is evaluated from its own closed form rather than from
    the gate time, so this path shares no arithmetic with
    :func:`phase_success`.
    """
    den = _check_dimensional_denominator(p)
    n = p.n_atoms
    lower = 4 * p.Delta**2 + p.gamma2**2
    upper = 4 * p.delta**2 + p.gamma3**2
    g1sq, g2sq = p.g1**2, p.g2**2

    upper_decay = math.pi * p.gamma3 * lower / den
    two_photon = 2 * (p.kappa / n) * math.pi * p.hbar**4 * lower**2 * upper / (
        16 * g1sq * g2sq * den
    )
    virtual_common = math.pi * p.hbar**2 * lower * upper / (4 * g2sq * den)
    cavity_virtual = (p.kappa / n) * virtual_common
    intermediate = p.gamma2 * virtual_common

    return PhaseGateResult(
        energy_shift_re=real_shift_expanded(p),
        gate_time=phase_gate_time(p),
        loss_cavity_two_photon=two_photon,
        loss_cavity_virtual=cavity_virtual,
        loss_atomic_intermediate=intermediate,
        loss_atomic_upper=upper_decay,
        success=1 - (upper_decay + two_photon + (cavity_virtual + intermediate)),
    )


# --------------------------------------------------------------------------
# dimensionless forms
# --------------------------------------------------------------------------


def phase_populations(env: GateEnvironment, t: PhaseTuning) -> PerturbedPopulations:
    """Virtual-state populations in the perturbative picture.

    Emits :class:`PerturbativityWarning` when either excited population
    exceeds 0.1; the closed forms are still returned as printed.
    """
    lower = 4 * t.Delta_r**2 + 1
    upper = 4 * t.delta_r**2 + 1
    om2 = env.omega**2
    pops = PerturbedPopulations(
        rho11=1.0,
        rho22=4 * om2 / lower,
        rho33=16 * om2 * om2 / (lower * upper),
    )
    if not pops.perturbative:
        warnings.warn(
            f"virtual populations rho22={pops.rho22:.3g}, rho33={pops.rho33:.3g} "
            "are outside the perturbative regime",
            PerturbativityWarning,
            stacklevel=2,
        )
    return pops


def phase_loss_terms(gamma_r, omega, n_atoms, delta_r, Delta_r):
    """Per-channel losses of the phase gate (array friendly).

    Returns ``(D, upper, two_photon, cavity_virtual, intermediate)`` where
    ``D = |4 delta_r Delta_r^2 - 2 Delta_r - delta_r|``. No degeneracy
    check is performed here.
    """
    lower = 4 * Delta_r**2 + 1
    upper_fac = 4 * delta_r**2 + 1
    den = np.abs(4 * delta_r * Delta_r**2 - 2 * Delta_r - delta_r)
    ngr = n_atoms * gamma_r
    om2 = omega**2
    upper = np.pi * lower / den
    two_photon = np.pi * lower**2 * upper_fac / (8 * ngr * om2 * om2 * den)
    # the combined (1 + N gamma_r) / (N gamma_r) term split 1 : N gamma_r
    intermediate = np.pi * lower * upper_fac / (4 * om2 * den)
    cavity_virtual = intermediate / ngr
    return den, upper, two_photon, cavity_virtual, intermediate


def _is_degenerate(den, delta_r, Delta_r):
    scale = np.maximum(1.0, np.abs(4 * delta_r * Delta_r**2))
    return ~(den >= DEGENERACY_RTOL * scale)


def phase_success_value(gamma_r, omega, n_atoms, delta_r, Delta_r):
    """Raw success probability, vectorized; degenerate tunings give ``-inf``."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        den, upper, two_photon, virtual, intermediate = phase_loss_terms(
            gamma_r, omega, n_atoms, delta_r, Delta_r
        )
        success = 1 - (upper + two_photon + (virtual + intermediate))
        return np.where(_is_degenerate(den, delta_r, Delta_r), -np.inf, success)


def phase_success(env: GateEnvironment, t: PhaseTuning) -> PhaseGateResult:
    """Success probability of the N-atom phase gate in dimensionless form.

    Raises
    ------
    DegenerateTuning
        If ``|4 delta_r Delta_r^2 - 2 Delta_r - delta_r|`` is numerically zero.
    """
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        den, upper, two_photon, virtual, intermediate = (
            float(v)
            for v in phase_loss_terms(
                env.gamma_r, env.omega, env.n_atoms, t.delta_r, t.Delta_r
            )
        )
    if _is_degenerate(den, t.delta_r, t.Delta_r):
        raise DegenerateTuning(
            f"4*delta_r*Delta_r^2 - 2*Delta_r - delta_r vanishes at {t!r}"
        )
    lower = 4 * t.Delta_r**2 + 1
    upper_fac = 4 * t.delta_r**2 + 1
    signed = 4 * t.delta_r * t.Delta_r**2 - 2 * t.Delta_r - t.delta_r
    om4 = env.omega**4
    return PhaseGateResult(
        energy_shift_re=16 * om4 * signed / (lower**2 * upper_fac),
        gate_time=math.pi * lower**2 * upper_fac / (16 * env.n_atoms * om4 * den),
        loss_cavity_two_photon=two_photon,
        loss_cavity_virtual=virtual,
        loss_atomic_intermediate=intermediate,
        loss_atomic_upper=upper,
        success=1 - (upper + two_photon + (virtual + intermediate)),
    )
