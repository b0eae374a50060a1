"""Tabulated data behind each reproduced figure.

Every figure is a header plus rows; the first column is the abscissa and
each further column one plotted curve. Failed evaluations appear as
``ERR:<ExceptionName>`` tokens in place of a number.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from gatecmp import figure_defaults as fd
from gatecmp.csvio import error_token, write_csv_atomic
from gatecmp.errors import GateModelError, UnknownFigure
from gatecmp.optimize import OPTIMIZE, Gate, OptimizationSpec, optimize_gate, sweep_1d
from gatecmp.params import BASELINE, GateEnvironment
from gatecmp.switch import FIG_A2_WIDTH, SwitchSpec, coupling_profile

__all__ = ["FIGURE_IDS", "FigureTable", "build_figure", "write_figure", "optimized_point"]


@dataclass(frozen=True)
class FigureTable:
    figure_id: str
    header: tuple[str, ...]
    rows: list[list]
    # "curves" for line plots, "map" for the long-format grid
    kind: str = "curves"
    xlog: bool = False


@functools.lru_cache(maxsize=None)
def optimized_point(gate: str, gamma_r: float, omega: float, n_atoms: int):
    """Optimized success for one hardware point, or an error token.

    Cached because several figures share curves (6c reuses 6a and 6b,
    7a/7b and 8 revisit the baseline).
    """
    env = GateEnvironment(gamma_r=gamma_r, omega=omega, n_atoms=n_atoms)
    try:
        return optimize_gate(env, OptimizationSpec(gate=Gate(gate))).success
    except GateModelError as exc:
        return error_token(type(exc).__name__)


def _cell(row) -> float | str:
    return error_token(row.error) if row.error else row.success


def _fig4a(env: GateEnvironment) -> FigureTable:
    xs = fd.FIG4A_DELTA_R
    curves = [
        sweep_1d(env, Gate.PHASE, "delta_r", xs, {"Delta_r": d})
        for d in fd.FIG4A_INTERMEDIATE
    ]
    header = ("delta_r",) + tuple(f"success_Delta_r_{d:g}" for d in fd.FIG4A_INTERMEDIATE)
    rows = [[x] + [_cell(c[i]) for c in curves] for i, x in enumerate(xs)]
    return FigureTable("4a", header, rows)


def _fig4b(env: GateEnvironment) -> FigureTable:
    rows = []
    for Delta_r in fd.FIG4B_INTERMEDIATE:
        line = sweep_1d(env, Gate.PHASE, "delta_r", fd.FIG4B_DELTA_R, {"Delta_r": Delta_r})
        rows.extend([row.value, Delta_r, _cell(row)] for row in line)
    return FigureTable("4b", ("delta_r", "Delta_r", "success"), rows, kind="map")


def _fig5(env: GateEnvironment) -> FigureTable:
    xs = fd.FIG5_EPS_KAPPA
    fixed = sweep_1d(env, Gate.ZENO, "eps_kappa", xs, {"Delta_r": fd.FIG5_FIXED_DELTA_R})
    best = sweep_1d(env, Gate.ZENO, "eps_kappa", xs, {"Delta_r": OPTIMIZE})
    rows = [
        [x, _cell(f), _cell(b), b.tuning.Delta_r if b.tuning else error_token(b.error)]
        for x, f, b in zip(xs, fixed, best)
    ]
    header = ("eps_kappa", f"success_Delta_r_{fd.FIG5_FIXED_DELTA_R:g}",
              "success_optimized", "Delta_r_optimized")
    return FigureTable("5", header, rows, xlog=True)


def _optimized_curve(gate: Gate, env: GateEnvironment, var: str, xs) -> list:
    out = []
    for x in xs:
        point = {"gamma_r": env.gamma_r, "omega": env.omega, "n_atoms": env.n_atoms}
        point[var] = int(x) if var == "n_atoms" else float(x)
        out.append(optimized_point(gate.value, point["gamma_r"], point["omega"], point["n_atoms"]))
    return out


def _fig6(which: str, env: GateEnvironment) -> FigureTable:
    xs = fd.RABI_AXIS
    phase_opt = _optimized_curve(Gate.PHASE, env, "omega", xs)
    zeno_opt = _optimized_curve(Gate.ZENO, env, "omega", xs)
    if which == "6a":
        fixed = [_cell(r) for r in sweep_1d(env, Gate.PHASE, "omega", xs, fd.FIG6_PHASE_FIXED)]
        header, cols = ("omega", "phase_fixed", "phase_optimized"), (fixed, phase_opt)
    elif which == "6b":
        fixed = [_cell(r) for r in sweep_1d(env, Gate.ZENO, "omega", xs, fd.FIG6_ZENO_FIXED)]
        header, cols = ("omega", "zeno_fixed", "zeno_optimized"), (fixed, zeno_opt)
    else:
        header, cols = ("omega", "phase_optimized", "zeno_optimized"), (phase_opt, zeno_opt)
    rows = [[x] + [c[i] for c in cols] for i, x in enumerate(xs)]
    return FigureTable(which, header, rows, xlog=True)


def _fig7(which: str, env: GateEnvironment) -> FigureTable:
    gate = Gate.PHASE if which == "7a" else Gate.ZENO
    xs = fd.RABI_AXIS
    cols = [_optimized_curve(gate, env.with_(gamma_r=g), "omega", xs) for g in fd.FIG7_GAMMA_R]
    header = ("omega",) + tuple(f"{gate.value}_gamma_r_{g:g}" for g in fd.FIG7_GAMMA_R)
    rows = [[x] + [c[i] for c in cols] for i, x in enumerate(xs)]
    return FigureTable(which, header, rows, xlog=True)


def _fig8(env: GateEnvironment) -> FigureTable:
    xs = fd.FIG8_N_ATOMS
    cols = [_optimized_curve(g, env, "n_atoms", xs) for g in (Gate.PHASE, Gate.ZENO)]
    rows = [[x] + [c[i] for c in cols] for i, x in enumerate(xs)]
    return FigureTable("8", ("n_atoms", "phase_optimized", "zeno_optimized"), rows, xlog=True)


def _switch_profiles():
    return [
        coupling_profile(SwitchSpec(a=FIG_A2_WIDTH, r=r, t_range=fd.FIGA2_T_RANGE,
                                    samples=fd.FIGA2_SAMPLES))
        for r in fd.FIGA2_RESIDUALS
    ]


def _figA2a(env: GateEnvironment) -> FigureTable:
    profiles = _switch_profiles()
    t = profiles[0].t / profiles[0].a
    header = ("t_over_a",) + tuple(f"R_sq_r_{r:g}" for r in fd.FIGA2_RESIDUALS)
    rows = [[t[i]] + [p.R_sq[i] for p in profiles] for i in range(len(t))]
    return FigureTable("A2a", header, rows)


def _figA2b(env: GateEnvironment) -> FigureTable:
    profile = _switch_profiles()[0]
    t = profile.t / profile.a
    amplitude = np.sqrt(profile.out_env)
    rows = [[t[i], amplitude[i]] for i in range(len(t))]
    return FigureTable("A2b", ("t_over_a", "field_amplitude"), rows)


_BUILDERS: dict[str, Callable[[GateEnvironment], FigureTable]] = {
    "4a": _fig4a,
    "4b": _fig4b,
    "5": _fig5,
    "6a": functools.partial(_fig6, "6a"),
    "6b": functools.partial(_fig6, "6b"),
    "6c": functools.partial(_fig6, "6c"),
    "7a": functools.partial(_fig7, "7a"),
    "7b": functools.partial(_fig7, "7b"),
    "8": _fig8,
    "A2a": _figA2a,
    "A2b": _figA2b,
}
FIGURE_IDS = tuple(_BUILDERS)


def build_figure(figure_id: str, env: GateEnvironment = BASELINE) -> FigureTable:
    """Compute the table for one figure.

    ``env`` supplies the hardware point; figures that sweep one of its
    fields override that field along the axis.
    """
    try:
        builder = _BUILDERS[figure_id]
    except KeyError:
        raise UnknownFigure(
            f"unknown figure {figure_id!r}; choose from {', '.join(FIGURE_IDS)}"
        ) from None
    return builder(env)


def write_figure(table: FigureTable, out_dir: str | Path) -> Path:
    return write_csv_atomic(Path(out_dir) / f"{table.figure_id}.csv", table.header, table.rows)
