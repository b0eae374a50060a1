"""Time-dependent resonator/waveguide coupling that releases a photon as a
Gaussian pulse.

All quantities are normalized: times in units of the resonator round-trip
time ``tau_R``, fields as ratios to the initial resonator field ``E0`` or
to the output pulse amplitude ``E1``. Running the profile backwards in
time captures an incoming Gaussian pulse instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import erf

from gatecmp.csvio import format_value, write_csv_atomic
from gatecmp.errors import ParameterError, ResidualOutOfRange

__all__ = [
    "SwitchSpec",
    "SwitchProfile",
    "PROFILE_HEADER",
    "FIG_A2_WIDTH",
    "coupling_profile",
    "coupling_coefficient_sq",
    "energy_audit",
    "reverse_profile",
    "write_profile_csv",
]

#: pulse width parameter used for the reference profiles, in units of tau_R
FIG_A2_WIDTH = 20 * math.sqrt(2)
PROFILE_HEADER = ("t_over_a", "R_sq", "E_sq_norm", "out_env")


@dataclass(frozen=True)
class SwitchSpec:
    """Pulse width ``a``, residual energy fraction ``r`` and sampling grid.

    ``t_range`` is given in units of ``a``.
    """

    a: float
    r: float
    t_range: tuple[float, float] = (-4.0, 4.0)
    samples: int = 2001

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ParameterError(f"pulse width a must be > 0, got {self.a!r}")
        if not 0 < self.r < 1:
            raise ResidualOutOfRange(f"residual fraction r must lie in (0, 1), got {self.r!r}")
        lo, hi = self.t_range
        if not lo < hi:
            raise ParameterError(f"empty time range {self.t_range!r}")
        if self.samples < 3 or self.samples % 2 == 0:
            raise ParameterError("samples must be odd and >= 3")


@dataclass(frozen=True, eq=False)
class SwitchProfile:
    """Sampled switching profile.

    Attributes
    ----------
    t : ndarray
        Sample times in units of ``tau_R``.
    R_sq : ndarray
        Squared coupling coefficient.
    E_sq : ndarray
        Resonator energy ``E(t)^2 / E0^2``.
    out_env : ndarray
        Output intensity envelope ``|E_A(0, t)|^2 / E1^2``.
    E1_over_E0_sq : float
        ``(E1 / E0)^2`` fixed by energy conservation.
    max_R_sq : float
        Largest sampled value of ``R_sq``.
    a, r : float
        Pulse width and residual fraction the profile was built from.
    """

    t: np.ndarray
    R_sq: np.ndarray
    E_sq: np.ndarray
    out_env: np.ndarray
    E1_over_E0_sq: float
    max_R_sq: float
    a: float
    r: float

    def __eq__(self, other):
        if not isinstance(other, SwitchProfile):
            return NotImplemented
        return (
            all(np.array_equal(getattr(self, k), getattr(other, k))
                for k in ("t", "R_sq", "E_sq", "out_env"))
            and (self.E1_over_E0_sq, self.max_R_sq, self.a, self.r)
            == (other.E1_over_E0_sq, other.max_R_sq, other.a, other.r)
        )


def coupling_coefficient_sq(t, a: float, r: float):
    """``R(t)^2`` for an output Gaussian of width ``a`` leaving residual ``r``."""
    t = np.asarray(t, dtype=float)
    return np.exp(-2 * t**2 / a**2) / (
        math.sqrt(math.pi / 2) * a * (r / (1 - r) + 0.5 - 0.5 * erf(math.sqrt(2) * t / a))
    )


def coupling_profile(spec: SwitchSpec) -> SwitchProfile:
    a, r = spec.a, spec.r
    lo, hi = spec.t_range
    if lo == -hi:
        # mirror the positive half so the grid is exactly antisymmetric
        half = np.linspace(0.0, hi * a, spec.samples // 2 + 1)
        t = np.concatenate([-half[:0:-1], half])
    else:
        t = np.linspace(lo * a, hi * a, spec.samples)
    e1_sq = (1 - r) / (math.sqrt(math.pi / 2) * a)
    e_sq = math.sqrt(math.pi / 8) * a * e1_sq * (1 - erf(math.sqrt(2) * t / a)) + r
    r_sq = coupling_coefficient_sq(t, a, r)
    return SwitchProfile(
        t=t,
        R_sq=r_sq,
        E_sq=e_sq,
        out_env=np.exp(-2 * t**2 / a**2),
        E1_over_E0_sq=e1_sq,
        max_R_sq=float(r_sq.max()),
        a=a,
        r=r,
    )


def energy_audit(profile: SwitchProfile) -> float:
    """Largest violation of energy conservation over the sampled times.

    At each sample ``T`` the energy left in the resonator plus the energy
    emitted since the first sample (integrated in closed form) should
    equal the initial energy.
    """
    a, t = profile.a, profile.t
    emitted = (
        math.sqrt(math.pi / 2) * (a / 2) * profile.E1_over_E0_sq
        * (erf(math.sqrt(2) * t / a) - erf(math.sqrt(2) * t[0] / a))
    )
    return float(np.max(np.abs(profile.E_sq + emitted - 1)))


def reverse_profile(profile: SwitchProfile) -> SwitchProfile:
    """Time-reversed profile ``R(t) -> R(-t)`` for capturing a pulse."""
    return SwitchProfile(
        t=-profile.t[::-1],
        R_sq=profile.R_sq[::-1].copy(),
        E_sq=profile.E_sq[::-1].copy(),
        out_env=profile.out_env[::-1].copy(),
        E1_over_E0_sq=profile.E1_over_E0_sq,
        max_R_sq=profile.max_R_sq,
        a=profile.a,
        r=profile.r,
    )


def write_profile_csv(profile: SwitchProfile, path: str | Path) -> Path:
    rows = [
        [format_value(v) for v in row]
        for row in zip(profile.t / profile.a, profile.R_sq, profile.E_sq, profile.out_env)
    ]
    return write_csv_atomic(path, PROFILE_HEADER, rows)
