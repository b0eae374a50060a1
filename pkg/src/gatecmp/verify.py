"""Randomized equivalence suites between the closed forms and the oracles.

Each suite draws parameter sets from a fixed-seed generator, so a run is
reproducible, and reports the largest disagreement it saw.

* ``phase``: dimensional loss formulas against the dimensionless ones.
* ``shift``: fourth-order energy shift against the eigenvalue oracle,
  including the convergence order as the couplings shrink.
* ``zeno``: closed-form Zeno success against RK4 integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from gatecmp.oracle import cross_difference_shift, integrate_zeno
from gatecmp.params import DimensionalParams, GateEnvironment, PhaseTuning, ZenoTuning, to_dimensional
from gatecmp.phase import fourth_order_shift, phase_success, phase_success_dimensional
from gatecmp.zeno import ZenoRates, zeno_rates_values, zeno_success_value

__all__ = [
    "SuiteReport",
    "SUITES",
    "PHASE_RTOL",
    "SHIFT_RTOL",
    "SHIFT_MIN_DROP",
    "ZENO_ATOL",
    "ZENO_STEPS",
    "phase_equivalence",
    "shift_equivalence",
    "zeno_equivalence",
    "run_suites",
]

SEED = 20240611
PHASE_RTOL = 1e-12
SHIFT_RTOL = 1e-2
SHIFT_MIN_DROP = 50.0
ZENO_ATOL = 1e-6
ZENO_STEPS = 20000
# success values this close to zero make a relative comparison meaningless
PHASE_MIN_SUCCESS = 0.05


@dataclass(frozen=True)
class SuiteReport:
    name: str
    cases: int
    max_error: float
    tolerance: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = (f"{status} {self.name}: {self.cases} cases, max error "
                f"{self.max_error:.3e} (tolerance {self.tolerance:.3e})")
        return f"{text}; {self.detail}" if self.detail else text


def _log_uniform(rng, lo, hi, size=None):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size))


def phase_equivalence(cases: int = 120, tol_scale: float = 1.0, seed: int = SEED) -> SuiteReport:
    """Dimensional and dimensionless phase-gate success on random draws.

    ``kappa = hbar = 1``, equal decay rates and couplings, and ``N`` cycles
    through 1, 10 and 100.
    """
    rng = np.random.default_rng(seed)
    tol = PHASE_RTOL * tol_scale
    worst = 0.0
    accepted = 0
    draws = 0
    while accepted < cases:
        draws += 1
        env = GateEnvironment(
            gamma_r=float(_log_uniform(rng, 0.01, 10.0)),
            omega=float(_log_uniform(rng, 5.0, 300.0)),
            n_atoms=(1, 10, 100)[accepted % 3],
        )
        tuning = PhaseTuning(
            delta_r=float(rng.uniform(0.5, 60.0)), Delta_r=float(rng.uniform(0.5, 30.0))
        )
        reduced = phase_success(env, tuning).success
        if abs(reduced) < PHASE_MIN_SUCCESS:
            continue
        full = phase_success_dimensional(to_dimensional(env, tuning)).success
        worst = max(worst, abs(full - reduced) / abs(reduced))
        accepted += 1
    return SuiteReport(
        "phase", accepted, worst, tol, worst <= tol,
        detail=f"{draws - accepted} near-zero draws skipped",
    )


def _random_lossy(rng) -> DimensionalParams:
    # couplings are filled in by the caller
    return DimensionalParams(
        g1=0.0, g2=0.0,
        gamma2=float(_log_uniform(rng, 0.05, 5.0)),
        gamma3=float(_log_uniform(rng, 0.05, 5.0)),
        kappa=1.0,
        Delta=float(rng.uniform(-20.0, 20.0)),
        delta=float(rng.uniform(-20.0, 20.0)),
    )


def _shift_residual(base: DimensionalParams, g: float) -> float:
    p = DimensionalParams(
        g1=g, g2=g, gamma2=base.gamma2, gamma3=base.gamma3, kappa=base.kappa,
        Delta=base.Delta, delta=base.delta,
    )
    exact = fourth_order_shift(p)
    return abs(cross_difference_shift(p) - exact) / abs(exact)


def shift_equivalence(cases: int = 100, tol_scale: float = 1.0, seed: int = SEED) -> SuiteReport:
    """Eigenvalue cross difference against the fourth-order shift.

    The coupling is ``5e-3`` of the smaller complex detuning. Shrinking
    it tenfold must cut the relative residual by at least
    :data:`SHIFT_MIN_DROP`, the signature of an ``O(g^2)`` remainder.
    """
    rng = np.random.default_rng(seed + 1)
    tol = SHIFT_RTOL * tol_scale
    worst = 0.0
    worst_drop = math.inf
    for _ in range(cases):
        base = _random_lossy(rng)
        scale = min(abs(complex(base.Delta, base.gamma2 / 2)), abs(complex(base.delta, base.gamma3 / 2)))
        g = 5e-3 * scale
        coarse = _shift_residual(base, g)
        fine = _shift_residual(base, g / 10)
        worst = max(worst, coarse)
        worst_drop = min(worst_drop, coarse / fine if fine > 0 else math.inf)
    passed = worst <= tol and worst_drop >= SHIFT_MIN_DROP
    return SuiteReport(
        "shift", cases, worst, tol, passed,
        detail=f"smallest residual drop on 10x smaller g: {worst_drop:.1f}x (need {SHIFT_MIN_DROP:g}x)",
    )


def zeno_equivalence(cases: int = 120, tol_scale: float = 1.0, seed: int = SEED,
                     steps: int = ZENO_STEPS) -> SuiteReport:
    """Closed-form Zeno success against the integrated two-amplitude model.

    ``R2 t_s`` is drawn log-uniformly from ``[0.1, 500]`` so both the
    oscillatory and the hyperbolic branch are covered; ``eps_kappa`` is
    then solved for to hit it. All cases are integrated in one batch.
    """
    rng = np.random.default_rng(seed + 2)
    tol = ZENO_ATOL * tol_scale
    gamma_r = _log_uniform(rng, 0.05, 5.0, cases)
    omega = _log_uniform(rng, 5.0, 200.0, cases)
    n_atoms = rng.choice([1, 10, 100], cases)
    Delta_r = rng.uniform(0.0, 40.0, cases)
    target = _log_uniform(rng, 0.1, 500.0, cases)
    lower = 4 * Delta_r**2 + 1
    eps_kappa = 8 * np.pi * n_atoms * gamma_r * omega**4 / (target * lower)

    closed, _ = zeno_success_value(gamma_r, omega, n_atoms, eps_kappa, Delta_r)
    r1_ts, r2_ts, radicand, swap_loss_ts, swap_time = zeno_rates_values(
        gamma_r, omega, n_atoms, eps_kappa, Delta_r
    )
    rates = ZenoRates(r1_ts, r2_ts, radicand, swap_loss_ts, swap_time)
    integrated = integrate_zeno(rates, steps=steps)
    worst = float(np.max(np.abs(closed - integrated)))
    hyper = int(np.count_nonzero(radicand > 0))
    return SuiteReport(
        "zeno", cases, worst, tol, worst <= tol,
        detail=f"{hyper} hyperbolic / {cases - hyper} oscillatory, {steps} RK4 steps",
    )


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "phase": phase_equivalence,
    "shift": shift_equivalence,
    "zeno": zeno_equivalence,
}


def run_suites(names=None, tol_scale: float = 1.0) -> list[SuiteReport]:
    names = list(SUITES) if not names else list(names)
    return [SUITES[name](tol_scale=tol_scale) for name in names]
