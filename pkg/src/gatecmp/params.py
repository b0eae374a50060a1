"""Physical and dimensionless parameter sets, conversions and config loading.

Rates are angular frequencies, couplings are energies, and ``hbar`` is
kept as an explicit field so the dimensional formulas can be evaluated
literally. Natural units (``hbar = 1``) are the default.

Dimensionless quantities::

    delta_r   = delta / Gamma
    Delta_r   = Delta / Gamma
    gamma_r   = Gamma / kappa
    omega     = g / (hbar Gamma)
    eps_kappa = (eps / hbar) / kappa
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

from gatecmp.errors import (
    AsymmetricParams,
    ConfigError,
    NonPositiveCoupling,
    NonPositiveRate,
    ParameterError,
)

__all__ = [
    "DimensionalParams",
    "GateEnvironment",
    "PhaseTuning",
    "ZenoTuning",
    "CONFIG_KEYS",
    "BASELINE",
    "to_dimensionless",
    "to_dimensional",
    "load_config",
    "parse_config",
]


def _check_atoms(n_atoms) -> None:
    if isinstance(n_atoms, bool) or not isinstance(n_atoms, int) or n_atoms < 1:
        raise ParameterError(f"n_atoms must be an integer >= 1, got {n_atoms!r}")


def _check_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise ParameterError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class DimensionalParams:
    """Raw atom/cavity parameters.

    Attributes
    ----------
    g1, g2 : float
        Averaged coupling matrix elements of the lower and upper transitions
        (energy units).
    gamma2, gamma3 : float
        Decay rates of the intermediate and upper atomic levels.
    kappa : float
        Cavity field decay rate.
    Delta : float
        Detuning of photon 1 from the lower transition.
    delta : float
        Detuning of the two-photon sum from the upper level.
    eps : float
        Resonator-resonator coupling (energy units).
    hbar : float
        Reduced Planck constant in the chosen units.
    n_atoms : int
        Number of atoms coupled to the cavity field.
    """

    g1: float
    g2: float
    gamma2: float
    gamma3: float
    kappa: float
    Delta: float
    delta: float
    eps: float = 0.0
    hbar: float = 1.0
    n_atoms: int = 1

    def __post_init__(self):
        _check_finite(**{f.name: getattr(self, f.name) for f in fields(self)})
        for name in ("kappa", "hbar"):
            if getattr(self, name) <= 0:
                raise NonPositiveRate(f"{name} must be > 0, got {getattr(self, name)!r}")
        # zero atomic decay is the lossless limit, kept for closed-form checks
        for name in ("gamma2", "gamma3"):
            if getattr(self, name) < 0:
                raise NonPositiveRate(f"{name} must be >= 0, got {getattr(self, name)!r}")
        if self.g1 < 0 or self.g2 < 0:
            raise ParameterError("coupling matrix elements g1, g2 must be >= 0")
        if self.eps < 0:
            raise ParameterError(f"eps must be >= 0, got {self.eps!r}")
        _check_atoms(self.n_atoms)


@dataclass(frozen=True)
class GateEnvironment:
    """Hardware parameters shared by both gate types."""

    gamma_r: float
    omega: float
    n_atoms: int = 1

    def __post_init__(self):
        _check_finite(gamma_r=self.gamma_r, omega=self.omega)
        if self.gamma_r <= 0:
            raise NonPositiveRate(f"gamma_r must be > 0, got {self.gamma_r!r}")
        if self.omega <= 0:
            raise ParameterError(f"omega must be > 0, got {self.omega!r}")
        _check_atoms(self.n_atoms)

    def with_(self, **changes) -> "GateEnvironment":
        return replace(self, **changes)


@dataclass(frozen=True)
class PhaseTuning:
    """Detunings of the Kerr phase gate, in units of Gamma (signed)."""

    delta_r: float
    Delta_r: float

    def __post_init__(self):
        _check_finite(delta_r=self.delta_r, Delta_r=self.Delta_r)


@dataclass(frozen=True)
class ZenoTuning:
    """Resonator coupling over kappa and intermediate detuning of the Zeno gate.

    The upper-level detuning is pinned to zero for this gate.
    """

    eps_kappa: float
    Delta_r: float

    def __post_init__(self):
        _check_finite(eps_kappa=self.eps_kappa, Delta_r=self.Delta_r)
        if self.eps_kappa <= 0:
            raise NonPositiveCoupling(
                f"eps_kappa must be > 0 for a finite swap time, got {self.eps_kappa!r}"
            )


#: Baseline cavity parameters used throughout the comparison.
BASELINE = GateEnvironment(gamma_r=0.1, omega=50.0, n_atoms=1)


def to_dimensionless(
    p: DimensionalParams,
) -> tuple[GateEnvironment, PhaseTuning, ZenoTuning]:
    """Reduce a symmetric dimensional parameter set to dimensionless form.

    Raises
    ------
    AsymmetricParams
        If ``gamma2 != gamma3`` or ``g1 != g2``.
    NonPositiveRate
        If the atomic decay rate is zero (the reduction divides by it).
    NonPositiveCoupling
        If ``eps == 0`` (the Zeno tuning would have an infinite swap time).
    """
    if p.gamma2 != p.gamma3 or p.g1 != p.g2:
        raise AsymmetricParams(
            "dimensionless reduction requires gamma2 == gamma3 and g1 == g2"
        )
    gamma = p.gamma2
    if gamma <= 0:
        raise NonPositiveRate("dimensionless reduction needs a nonzero atomic decay rate")
    env = GateEnvironment(
        gamma_r=gamma / p.kappa, omega=p.g1 / (p.hbar * gamma), n_atoms=p.n_atoms
    )
    phase = PhaseTuning(delta_r=p.delta / gamma, Delta_r=p.Delta / gamma)
    zeno = ZenoTuning(eps_kappa=(p.eps / p.hbar) / p.kappa, Delta_r=p.Delta / gamma)
    return env, phase, zeno


def to_dimensional(
    env: GateEnvironment,
    phase: PhaseTuning,
    eps_kappa: float = 0.0,
    kappa: float = 1.0,
    hbar: float = 1.0,
) -> DimensionalParams:
    """Rebuild a symmetric dimensional set (inverse of :func:`to_dimensionless`)."""
    gamma = env.gamma_r * kappa
    g = env.omega * hbar * gamma
    return DimensionalParams(
        g1=g,
        g2=g,
        gamma2=gamma,
        gamma3=gamma,
        kappa=kappa,
        Delta=phase.Delta_r * gamma,
        delta=phase.delta_r * gamma,
        eps=eps_kappa * kappa * hbar,
        hbar=hbar,
        n_atoms=env.n_atoms,
    )


# --------------------------------------------------------------------------
# flat key-value configuration files
# --------------------------------------------------------------------------

CONFIG_KEYS = ("gamma_r", "omega", "n_atoms", "delta_r", "Delta_r", "eps_kappa")


def parse_config(text: str, source: str = "<config>") -> dict[str, float | int]:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Only the keys in :data:`CONFIG_KEYS` are accepted. ``n_atoms`` must be
    an integer, everything else a decimal number.
    """
    values: dict[str, float | int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = int(value) if key == "n_atoms" else float(value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {value!r}") from None
    return values


def load_config(path: str | Path) -> dict[str, float | int]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return parse_config(text, source=str(path))
