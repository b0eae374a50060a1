"""Tuning optimization and one-dimensional parameter sweeps.

The optimizer is deterministic: an exhaustive coarse grid (logarithmic on
``eps_kappa``, linear on detunings), followed by a bounded Nelder-Mead
simplex started from the best grid cell.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.optimize import minimize

from gatecmp.errors import EmptyFeasibleRegion, GateModelError, ParameterError
from gatecmp.params import GateEnvironment, PhaseTuning, ZenoTuning
from gatecmp.phase import phase_success, phase_success_value
from gatecmp.zeno import zeno_cz_success_value, zeno_success

__all__ = [
    "Gate",
    "DEFAULT_BOUNDS",
    "LOG_VARS",
    "OptimizationSpec",
    "Optimum",
    "GridSearchResult",
    "maximize",
    "objective",
    "optimize_gate",
    "optimized_success",
    "SweepRow",
    "sweep_1d",
    "OPTIMIZE",
]


class Gate(str, enum.Enum):
    PHASE = "phase"
    ZENO = "zeno"

    @property
    def tuning_vars(self) -> tuple[str, ...]:
        return ("delta_r", "Delta_r") if self is Gate.PHASE else ("eps_kappa", "Delta_r")


DEFAULT_BOUNDS: dict[str, tuple[float, float]] = {
    "delta_r": (0.1, 200.0),
    "Delta_r": (0.1, 200.0),
    "eps_kappa": (1.0, 1e5),
}
LOG_VARS = frozenset({"eps_kappa"})
ENV_VARS = ("gamma_r", "omega", "n_atoms")

#: sentinel directive for :func:`sweep_1d`
OPTIMIZE = "optimize"


@dataclass(frozen=True)
class OptimizationSpec:
    """What to optimize and how.

    Variables that are not free take their value from ``fixed``.
    """

    gate: Gate
    free_vars: tuple[str, ...] = ()
    bounds: Mapping[str, tuple[float, float]] = field(default_factory=dict)
    fixed: Mapping[str, float] = field(default_factory=dict)
    grid: int = 64
    refine_iters: int = 200
    tol: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "gate", Gate(self.gate))
        if not self.free_vars:
            object.__setattr__(self, "free_vars", self.gate.tuning_vars)
        allowed = self.gate.tuning_vars
        for name in self.free_vars:
            if name not in allowed:
                raise ParameterError(f"{name!r} is not a tuning variable of the {self.gate.value} gate")
        if len(set(self.free_vars)) != len(self.free_vars):
            raise ParameterError("free_vars contains duplicates")
        for name in allowed:
            if name not in self.free_vars and name not in self.fixed:
                raise ParameterError(f"{name!r} is neither free nor fixed")
        for name in self.free_vars:
            lo, hi = self.bounds_for(name)
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ParameterError(f"bad bounds for {name}: {(lo, hi)}")
            if name in LOG_VARS and lo <= 0:
                raise ParameterError(f"{name} is searched on a log scale; lower bound must be > 0")
        if self.grid < 2:
            raise ParameterError("grid needs at least 2 points per axis")

    def bounds_for(self, name: str) -> tuple[float, float]:
        lo, hi = self.bounds.get(name, DEFAULT_BOUNDS[name])
        return float(lo), float(hi)


@dataclass(frozen=True)
class GridSearchResult:
    x: tuple[float, ...]
    value: float


@dataclass(frozen=True)
class Optimum:
    tuning: PhaseTuning | ZenoTuning
    success: float
    evaluations: int
    grid_best: GridSearchResult


def maximize(
    func: Callable[..., np.ndarray],
    bounds: Sequence[tuple[float, float]],
    log_axes: Sequence[bool] | None = None,
    grid: int = 64,
    refine_iters: int = 200,
    tol: float = 1e-9,
    xtol: float = 1e-9,
) -> tuple[np.ndarray, float, int, GridSearchResult]:
    """Maximize ``func(*coords)`` over a box.

    ``func`` must accept numpy arrays (it is called once on the full grid)
    as well as scalars. Non-finite values count as infeasible. Ties on the
    grid go to the lexicographically smallest coordinate tuple.

    Returns ``(x, value, evaluations, grid_best)``.
    """
    ndim = len(bounds)
    log_axes = tuple(log_axes) if log_axes is not None else (False,) * ndim
    lo = np.array([math.log10(b[0]) if lg else b[0] for b, lg in zip(bounds, log_axes)])
    hi = np.array([math.log10(b[1]) if lg else b[1] for b, lg in zip(bounds, log_axes)])

    def to_native(u):
        return [10.0**ui if lg else ui for ui, lg in zip(u, log_axes)]

    axes = [np.linspace(lo[i], hi[i], grid) for i in range(ndim)]
    mesh = np.meshgrid(*axes, indexing="ij")
    with np.errstate(all="ignore"):
        values = np.asarray(func(*to_native(mesh)), dtype=float)
    values = np.broadcast_to(values, mesh[0].shape)
    feasible = np.isfinite(values)
    if not feasible.any():
        raise EmptyFeasibleRegion("objective is not finite anywhere on the grid")
    # argmax returns the first maximum in C order, i.e. the smallest coordinates
    flat = int(np.argmax(np.where(feasible, values, -np.inf)))
    idx = np.unravel_index(flat, mesh[0].shape)
    u0 = np.array([axes[i][idx[i]] for i in range(ndim)])
    grid_value = float(values[idx])
    grid_best = GridSearchResult(x=tuple(float(v) for v in to_native(u0)), value=grid_value)
    evaluations = values.size

    count = 0

    def neg(u):
        nonlocal count
        count += 1
        with np.errstate(all="ignore"):
            v = float(func(*to_native(u)))
        return -v if math.isfinite(v) else math.inf

    # initial simplex: one grid cell along each axis, stepping inwards
    step = (hi - lo) / (grid - 1)
    simplex = [u0]
    for i in range(ndim):
        vertex = u0.copy()
        vertex[i] += step[i] if u0[i] + step[i] <= hi[i] else -step[i]
        simplex.append(vertex)
    res = minimize(
        neg,
        u0,
        method="Nelder-Mead",
        bounds=list(zip(lo, hi)),
        options={
            "initial_simplex": np.array(simplex),
            "maxiter": refine_iters,
            "xatol": xtol,
            "fatol": tol,
        },
    )
    evaluations += count
    u_best, v_best = np.asarray(res.x, dtype=float), -float(res.fun)
    if not v_best >= grid_value:
        u_best, v_best = u0, grid_value
    return np.array(to_native(u_best)), v_best, evaluations, grid_best


def objective(env: GateEnvironment, gate: Gate) -> Callable[..., np.ndarray]:
    """Vectorized success probability ``f(var1, var2)`` for a gate's tuning vars.

    Degenerate phase tunings and Zeno tunings without the conditional pi
    phase return ``-inf``.
    """
    gate = Gate(gate)
    if gate is Gate.PHASE:
        def f(delta_r, Delta_r):
            return phase_success_value(env.gamma_r, env.omega, env.n_atoms, delta_r, Delta_r)
    else:
        def f(eps_kappa, Delta_r):
            return zeno_cz_success_value(env.gamma_r, env.omega, env.n_atoms, eps_kappa, Delta_r)
    return f


def _make_tuning(gate: Gate, values: Mapping[str, float]):
    if gate is Gate.PHASE:
        return PhaseTuning(delta_r=float(values["delta_r"]), Delta_r=float(values["Delta_r"]))
    return ZenoTuning(eps_kappa=float(values["eps_kappa"]), Delta_r=float(values["Delta_r"]))


def optimize_gate(env: GateEnvironment, spec: OptimizationSpec) -> Optimum:
    """Best tuning of one gate for fixed hardware parameters."""
    gate = spec.gate
    f = objective(env, gate)
    names = gate.tuning_vars
    free = spec.free_vars

    def restricted(*coords):
        kwargs = {name: spec.fixed[name] for name in names if name not in free}
        kwargs.update(zip(free, coords))
        return f(*(kwargs[name] for name in names))

    x, value, evaluations, grid_best = maximize(
        restricted,
        [spec.bounds_for(name) for name in free],
        log_axes=[name in LOG_VARS for name in free],
        grid=spec.grid,
        refine_iters=spec.refine_iters,
        tol=spec.tol,
    )
    chosen = {name: spec.fixed.get(name) for name in names}
    chosen.update(zip(free, x))
    return Optimum(
        tuning=_make_tuning(gate, chosen),
        success=value,
        evaluations=evaluations,
        grid_best=grid_best,
    )


def optimized_success(env: GateEnvironment, gate: Gate | str, **spec_kwargs) -> Optimum:
    """Shorthand: optimize every tuning variable of ``gate`` with defaults."""
    return optimize_gate(env, OptimizationSpec(gate=Gate(gate), **spec_kwargs))


# --------------------------------------------------------------------------
# sweeps
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    """One point of a sweep. ``error`` names the exception class on failure."""

    value: float
    success: float | None
    tuning: PhaseTuning | ZenoTuning | None
    error: str | None = None


def _direct_value(env: GateEnvironment, gate: Gate, tuning) -> float:
    if gate is Gate.PHASE:
        return phase_success(env, tuning).success
    return zeno_success(env, tuning).success


def sweep_1d(
    env: GateEnvironment,
    gate: Gate | str,
    swept_var: str,
    values: Sequence[float],
    directives: Mapping[str, float | str],
    *,
    grid: int = 64,
    bounds: Mapping[str, tuple[float, float]] | None = None,
) -> list[SweepRow]:
    """Evaluate one gate along one variable.

    ``swept_var`` is a tuning variable of the gate or one of the
    environment fields ``gamma_r``, ``omega``, ``n_atoms``. Every other
    tuning variable needs a directive: a number pins it, :data:`OPTIMIZE`
    re-optimizes it at each point. When nothing is optimized the success
    is the raw closed-form value; with optimization the Zeno objective
    only accepts tunings that produce the conditional phase.
    """
    gate = Gate(gate)
    names = gate.tuning_vars
    if len(values) == 0:
        raise ParameterError("sweep needs at least one value")
    if swept_var not in names and swept_var not in ENV_VARS:
        raise ParameterError(f"cannot sweep {swept_var!r} for the {gate.value} gate")
    others = [n for n in names if n != swept_var]
    for name in others:
        if name not in directives:
            raise ParameterError(f"no directive for {name!r}")
    optimized = tuple(n for n in others if directives[n] == OPTIMIZE)
    fixed = {n: float(directives[n]) for n in others if n not in optimized}

    rows = []
    for value in values:
        point_env, point_fixed = env, dict(fixed)
        if swept_var in ENV_VARS:
            cast = int(round(value)) if swept_var == "n_atoms" else float(value)
            point_env = env.with_(**{swept_var: cast})
        else:
            point_fixed[swept_var] = float(value)
        try:
            if optimized:
                opt = optimize_gate(
                    point_env,
                    OptimizationSpec(
                        gate=gate, free_vars=optimized, fixed=point_fixed,
                        bounds=bounds or {}, grid=grid,
                    ),
                )
                rows.append(SweepRow(float(value), opt.success, opt.tuning))
            else:
                tuning = _make_tuning(gate, point_fixed)
                rows.append(SweepRow(float(value), _direct_value(point_env, gate, tuning), tuning))
        except GateModelError as exc:
            rows.append(SweepRow(float(value), None, None, error=type(exc).__name__))
    return rows
