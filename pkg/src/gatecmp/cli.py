"""Command-line interface: ``gatecmp <command> [options]``.

Settings are resolved in order: built-in defaults, then ``--config``
file, then individual flags.

Exit codes: 0 success, 2 configuration or parameter error, 3 a
verification suite failed, 4 unknown command or figure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from gatecmp import figure_defaults
from gatecmp.csvio import error_token, write_csv_atomic
from gatecmp.errors import ConfigError, GateModelError, ParameterError, UnknownFigure
from gatecmp.figures import FIGURE_IDS, build_figure, write_figure
from gatecmp.optimize import (
    ENV_VARS,
    OPTIMIZE,
    Gate,
    OptimizationSpec,
    optimize_gate,
    sweep_1d,
)
from gatecmp.params import BASELINE, GateEnvironment, PhaseTuning, ZenoTuning, load_config
from gatecmp.phase import phase_success
from gatecmp.switch import FIG_A2_WIDTH, SwitchSpec, coupling_profile, energy_audit, write_profile_csv
from gatecmp.verify import SUITES, run_suites
from gatecmp.zeno import swap_fidelity, zeno_success

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFY = 3
EXIT_UNKNOWN = 4

COMMANDS = ("eval", "optimize", "sweep", "figure", "switch", "verify")

DEFAULTS = {
    "gamma_r": BASELINE.gamma_r,
    "omega": BASELINE.omega,
    "n_atoms": BASELINE.n_atoms,
    "delta_r": 14.9,
    "Delta_r": 6.4,
    "eps_kappa": 725.0,
}

# flag name -> settings key
_PARAM_FLAGS = {
    "gamma_r": "--gamma-r",
    "omega": "--omega",
    "n_atoms": "--n-atoms",
    "delta_r": "--delta-r",
    "Delta_r": "--Delta-r",
    "eps_kappa": "--eps-kappa",
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="key = value parameter file")
    p.add_argument("--out", type=Path, help="output directory for CSV (and plot) files")
    p.add_argument("--plot", action="store_true", help="also render SVG plots")
    for key, flag in _PARAM_FLAGS.items():
        p.add_argument(flag, dest=key, type=int if key == "n_atoms" else float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gatecmp",
        description="Success probabilities of cavity phase gates and Zeno gates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate both gates at one tuning")
    _common(p)
    p.add_argument("--gate", choices=("phase", "zeno", "both"), default="both")

    p = sub.add_parser("optimize", help="optimize the tuning of one or both gates")
    _common(p)
    p.add_argument("--gate", choices=("phase", "zeno", "both"), default="both")
    p.add_argument("--grid", type=int, default=64)

    p = sub.add_parser("sweep", help="one-dimensional sweep of one gate")
    _common(p)
    p.add_argument("--gate", choices=("phase", "zeno"), required=True)
    p.add_argument("--var", required=True,
                   choices=("delta_r", "Delta_r", "eps_kappa") + ENV_VARS)
    p.add_argument("--range", nargs=3, metavar=("START", "STOP", "COUNT"), required=True)
    p.add_argument("--log", action="store_true", help="log-spaced sweep values")
    p.add_argument("--optimize", action="append", default=[], metavar="VAR",
                   help="re-optimize VAR at every point (repeatable)")
    p.add_argument("--grid", type=int, default=64)

    p = sub.add_parser("figure", help="write the data behind a figure")
    _common(p)
    p.add_argument("--figure", required=True, help=f"one of {', '.join(FIGURE_IDS)} or 'all'")

    p = sub.add_parser("switch", help="coupling profile for Gaussian pulse release")
    _common(p)
    p.add_argument("--width", type=float, default=FIG_A2_WIDTH,
                   help="pulse width a in round-trip times")
    p.add_argument("--residual", type=float, default=1e-4, help="residual energy fraction r")
    p.add_argument("--samples", type=int, default=2001)

    p = sub.add_parser("verify", help="run the oracle equivalence suites")
    _common(p)
    p.add_argument("--suite", action="append", choices=tuple(SUITES), default=None)
    p.add_argument("--tol-scale", type=float, default=1.0,
                   help="multiply every tolerance by this factor")
    return parser


def resolve_settings(args: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    if args.config is not None:
        settings.update(load_config(args.config))
    for key in _PARAM_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _env(settings) -> GateEnvironment:
    return GateEnvironment(settings["gamma_r"], settings["omega"], settings["n_atoms"])


def _out_dir(args) -> Path:
    return args.out if args.out is not None else Path(".")


def _gates(choice: str) -> list[Gate]:
    return [Gate.PHASE, Gate.ZENO] if choice == "both" else [Gate(choice)]


def _cmd_eval(args, settings) -> int:
    env = _env(settings)
    rows = []
    for gate in _gates(args.gate):
        if gate is Gate.PHASE:
            res = phase_success(env, PhaseTuning(settings["delta_r"], settings["Delta_r"]))
            print(f"phase success {res.success:.9g}")
            for name, value in res.losses.items():
                print(f"  {name} {value:.9g}")
            print(f"  gate_time_per_gamma {res.gate_time:.9g}")
            rows.append(["phase", res.success])
        else:
            tuning = ZenoTuning(settings["eps_kappa"], settings["Delta_r"])
            res = zeno_success(env, tuning)
            print(f"zeno success {res.success:.9g}")
            print(f"  amp_11 {res.amp_11:.9g}")
            print(f"  conditional_phase {'yes' if res.conditional_phase_ok else 'no'}")
            print(f"  swap_fidelity {swap_fidelity(env, tuning):.9g}")
            rows.append(["zeno", res.success])
    if args.out is not None:
        write_csv_atomic(args.out / "eval.csv", ("gate", "success"), rows)
    return EXIT_OK


def _tuning_cells(tuning) -> list:
    if isinstance(tuning, PhaseTuning):
        return [tuning.delta_r, tuning.Delta_r, ""]
    return ["", tuning.Delta_r, tuning.eps_kappa]


def _cmd_optimize(args, settings) -> int:
    env = _env(settings)
    rows = []
    for gate in _gates(args.gate):
        opt = optimize_gate(env, OptimizationSpec(gate=gate, grid=args.grid))
        cells = _tuning_cells(opt.tuning)
        tuning_text = ", ".join(
            f"{name}={value:.9g}"
            for name, value in zip(("delta_r", "Delta_r", "eps_kappa"), cells)
            if value != ""
        )
        print(f"{gate.value} optimum {opt.success:.9g} at {tuning_text}")
        rows.append([gate.value, opt.success] + cells)
    if args.out is not None:
        write_csv_atomic(
            args.out / "optimize.csv",
            ("gate", "success", "delta_r", "Delta_r", "eps_kappa"),
            rows,
        )
    return EXIT_OK


def _sweep_values(limits, log: bool) -> np.ndarray:
    try:
        start, stop, count = float(limits[0]), float(limits[1]), int(limits[2])
    except ValueError:
        raise ConfigError(f"bad --range {' '.join(limits)}") from None
    if count < 1:
        raise ConfigError("--range COUNT must be >= 1")
    if log:
        if start <= 0 or stop <= 0:
            raise ConfigError("log sweep needs positive endpoints")
        return np.geomspace(start, stop, count)
    return np.linspace(start, stop, count)


def _cmd_sweep(args, settings) -> int:
    gate = Gate(args.gate)
    values = _sweep_values(args.range, args.log)
    for name in args.optimize:
        if name not in gate.tuning_vars or name == args.var:
            raise ConfigError(f"cannot optimize {name!r} in a {gate.value} sweep over {args.var}")
    directives = {
        name: OPTIMIZE if name in args.optimize else settings[name]
        for name in gate.tuning_vars
        if name != args.var
    }
    rows = sweep_1d(_env(settings), gate, args.var, values, directives, grid=args.grid)
    extra = tuple(n for n in gate.tuning_vars if n != args.var)
    out_rows = []
    for row in rows:
        if row.error:
            token = error_token(row.error)
            out_rows.append([row.value, token] + [token] * len(extra))
        else:
            out_rows.append([row.value, row.success] + [getattr(row.tuning, n) for n in extra])
    path = write_csv_atomic(
        _out_dir(args) / f"sweep_{gate.value}_{args.var}.csv",
        (args.var, "success") + extra,
        out_rows,
    )
    print(f"wrote {path} ({len(out_rows)} rows)")
    return EXIT_OK


def _cmd_figure(args, settings) -> int:
    ids = FIGURE_IDS if args.figure == "all" else (args.figure,)
    for fid in ids:
        if fid not in FIGURE_IDS:
            raise UnknownFigure(f"unknown figure {fid!r}; choose from {', '.join(FIGURE_IDS)} or all")
    env = _env(settings)
    out = _out_dir(args)
    for fid in ids:
        table = build_figure(fid, env)
        path = write_figure(table, out)
        print(f"wrote {path} (axis defaults v{figure_defaults.VERSION})")
        if args.plot:
            _maybe_plot(table, out)
    return EXIT_OK


def _maybe_plot(table, out) -> None:
    from gatecmp.plots import PlottingUnavailable, render_figure

    try:
        print(f"wrote {render_figure(table, out)}")
    except PlottingUnavailable as exc:
        print(f"warning: {exc}; skipping plot", file=sys.stderr)


def _cmd_switch(args, settings) -> int:
    profile = coupling_profile(SwitchSpec(a=args.width, r=args.residual, samples=args.samples))
    path = write_profile_csv(profile, _out_dir(args) / "switch.csv")
    print(f"max R^2 {profile.max_R_sq:.9g}")
    print(f"(E1/E0)^2 {profile.E1_over_E0_sq:.9g}")
    print(f"energy audit residual {energy_audit(profile):.3e}")
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_verify(args, settings) -> int:
    if not (math.isfinite(args.tol_scale) and args.tol_scale >= 0):
        raise ConfigError("--tol-scale must be a finite number >= 0")
    reports = run_suites(args.suite, tol_scale=args.tol_scale)
    for report in reports:
        print(report.line())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


_HANDLERS = {
    "eval": _cmd_eval,
    "optimize": _cmd_optimize,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "switch": _cmd_switch,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        print(f"gatecmp: unknown command {argv[0]!r}; choose from {', '.join(COMMANDS)}",
              file=sys.stderr)
        return EXIT_UNKNOWN
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings = resolve_settings(args)
        return _HANDLERS[args.command](args, settings)
    except UnknownFigure as exc:
        print(f"gatecmp: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (ConfigError, ParameterError, GateModelError) as exc:
        print(f"gatecmp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
