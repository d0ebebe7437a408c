"""Command-line entry point: ``fdmqubit <command> [options]``.

Every table-producing command writes CSV to ``--out`` (stdout by default).
When ``--out`` names a file, a JSON run manifest is written next to it as
``<out>.manifest.json``; ``fdmqubit rerun <manifest>`` reproduces the CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import platform
import sys
import time
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .comb import FrequencyComb, PulseConfig
from .errors import FDMError
from .experiments import (
    ANALYTIC_ENGINES,
    ENGINES,
    NUMERIC_ENGINES,
    DEFAULT_PHI,
    gate_fidelity,
    reference_comb,
    run_fig2_spectrum,
    run_fig3,
    run_fig4_lambdas,
    run_fig5_slope,
    run_fig6,
)
from .magnus import lambda_closed_form, lambda_general
from .metrics import analytic_fidelity, fit_infidelity_slope, spectrum_magnitude
from .propagator import IntegrationSettings

EXIT_OK, EXIT_USAGE, EXIT_PHYSICS = 0, 2, 3

# output columns per command
COLUMNS = {
    "fig2": ("omega", "k", "magnitude"),
    "fig3": ("k0", "f_analytic", "f_numeric"),
    "fig4": ("tau_ratio", "k0", "lambda_x", "lambda_y", "lambda_z"),
    "fig5": ("k0", "slope", "intercept", "residual_rms", "note"),
    "fig5-points": ("k0", "m", "infidelity"),
    "fig6a": ("k0", "tau_ratio", "f_numeric"),
    "fig6b": ("n", "k0", "f_numeric", "note"),
    "fig6c": ("phi", "k0", "f_numeric"),
    "fidelity": ("l", "r", "k0", "tau_ns", "phi", "engine", "fidelity"),
    "spectrum": ("omega", "k", "magnitude"),
    "slope": ("m", "infidelity"),
}

# keys that do not affect the table and are left out of manifests
_NON_RESULT_KEYS = {"out", "plot_script", "workers", "func", "manifest"}


class UsageError(Exception):
    pass


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def format_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _engines(args, default):
    if not args.engines:
        return default
    names = [e.strip() for e in args.engines.split(",") if e.strip()]
    for e in names:
        if e not in ENGINES:
            raise UsageError(f"unknown engine {e!r}; choose from {', '.join(ENGINES)}")
    return tuple(names)


def _split_engines(args, default):
    names = _engines(args, default)
    analytic = [e for e in names if e in ANALYTIC_ENGINES]
    numeric = [e for e in names if e in NUMERIC_ENGINES]
    if len(analytic) > 1 or len(numeric) > 1:
        raise UsageError("give at most one analytic and one numeric engine")
    return (analytic[0] if analytic else None), (numeric[0] if numeric else None)


def _settings(args):
    return IntegrationSettings(args.steps_per_period)


def _comb(args, l=-7, r=7):
    return reference_comb(l, r, args.fq_ghz * 1e9, args.df_mhz * 1e6)


# ----------------------------------------------------------------------------
# commands; each returns (column key, rows)


def cmd_fig2(args):
    rows = run_fig2_spectrum(args.tau_ratio, args.fq_ghz * 1e9, args.df_mhz * 1e6)
    return "fig2", rows


def cmd_fig3(args):
    analytic, numeric = _split_engines(args, ("magnus-reduction", "numeric-full"))
    engines = tuple(e for e in (analytic, numeric) if e)
    records = run_fig3(args.variant, engines, _settings(args), args.workers, _comb(args), args.phi)
    rows = [(rec.params["k0"], rec.values.get(analytic), rec.values.get(numeric)) for rec in records]
    return "fig3", rows


def cmd_fig4(args):
    return "fig4", run_fig4_lambdas(_comb(args), args.phi)


def cmd_fig5(args):
    result = run_fig5_slope(_comb(args), args.phi)
    if args.points:
        rows = [(k0, m, inf) for k0, pts in result.points.items() for m, inf in pts]
        return "fig5-points", rows
    rows = []
    for k0 in sorted(set(result.fits) | set(result.omitted)):
        if k0 in result.fits:
            fit = result.fits[k0]
            rows.append((k0, fit.slope, fit.intercept, fit.residual_rms, ""))
        else:
            rows.append((k0, None, None, None, "omitted: " + result.omitted[k0]))
    return "fig5", rows


def cmd_fig6(args):
    _, numeric = _split_engines(args, ("numeric-full",))
    if numeric is None:
        raise UsageError("fig6 needs a numeric engine")
    records = run_fig6(args.panel, _settings(args), args.workers, _comb(args), numeric)
    key = "fig6" + args.panel
    if args.panel == "a":
        rows = [(r.params["k0"], r.params["tau_ratio"], r.values[numeric]) for r in records]
    elif args.panel == "b":
        rows = [(r.params["n"], r.params["k0"], r.values[numeric], r.note) for r in records]
    else:
        rows = [(r.params["phi"], r.params["k0"], r.values[numeric]) for r in records]
    return key, rows


def _point_comb(args):
    l, r = args.l, args.r
    if l is None and r is None:
        n = 15 if args.n is None else args.n
        comb = FrequencyComb.centered(n, 2 * math.pi * args.df_mhz * 1e6, 2 * math.pi * args.fq_ghz * 1e9)
    else:
        if l is None or r is None:
            raise UsageError("--l and --r must be given together")
        comb = FrequencyComb.from_hz(l, r, args.df_mhz * 1e6, args.fq_ghz * 1e9)
    if args.n is not None and args.n != comb.n:
        raise UsageError(f"--n {args.n} disagrees with --l/--r (which give N = {comb.n})")
    return comb


def cmd_fidelity(args):
    comb = _point_comb(args)
    k0 = comb.check_target(args.k0)
    pulse = PulseConfig(args.tau_ns * 1e-9, args.phi)
    value = gate_fidelity(comb, pulse, k0, args.engine, _settings(args))
    print(f"F = {value:.12f}", file=sys.stderr if args.out else sys.stdout)
    return "fidelity", [(comb.l, comb.r, k0, args.tau_ns, args.phi, args.engine, value)]


def cmd_spectrum(args):
    comb = _point_comb(args)
    k = comb.check_target(args.k)
    pulse = PulseConfig(args.tau_ns * 1e-9, args.phi)
    omega = comb.omega_q0 + np.linspace(-args.window, args.window, args.count) * comb.delta
    mags = spectrum_magnitude(pulse, comb.omega_d(k), omega)
    return "spectrum", [(float(w), k, float(m)) for w, m in zip(omega, mags)]


def cmd_slope(args):
    comb = _point_comb(args)
    k0 = comb.check_target(args.k0)
    engine = args.engine
    rows = []
    for m in range(1, args.m_max + 1):
        pulse = PulseConfig.from_tau_ratio(comb, m, args.phi)
        if engine == "magnus-reduction":
            f = analytic_fidelity(lambda_closed_form(comb, pulse, k0), args.phi).value
        elif engine == "magnus-general":
            f = analytic_fidelity(lambda_general(comb, pulse, k0), args.phi).value
        else:
            f = gate_fidelity(comb, pulse, k0, engine, _settings(args))
        rows.append((m, 1.0 - f))
    usable = [p for p in rows if p[1] > 0]
    if len(usable) >= 3:
        fit = fit_infidelity_slope(usable)
        print(
            f"slope = {fit.slope:.6f}  intercept = {fit.intercept:.6f}  "
            f"residual_rms = {fit.residual_rms:.3g}",
            file=sys.stderr,
        )
    else:
        print("slope: fewer than 3 points with nonzero infidelity, no fit", file=sys.stderr)
    return "slope", rows


# ----------------------------------------------------------------------------
# plot scripts

_PLOTS = {
    "fig2": "set xlabel 'omega (rad/s)'\nset ylabel '|spectrum| (s)'\n"
            "plot for [k=-2:2] DATA using 1:($2==k ? $3 : 1/0) with lines title sprintf('k=%d', k)\n",
    "fig3": "set xlabel 'k0'\nset ylabel 'F'\n"
            "plot DATA using 1:2 with lines title 'Magnus', DATA using 1:3 with points pt 7 title 'numeric'\n",
    "fig4": "set xlabel 'k0'\nset ylabel 'angle'\n"
            "plot for [c=3:5] DATA using 2:($1==1 ? column(c) : 1/0) with linespoints title columnhead(c)\n",
    "fig5-points": "set logscale xy\nset xlabel 'm = tau/tau0'\nset ylabel '1 - F'\n"
                   "plot for [k=1:7] DATA using 2:($1==k ? $3 : 1/0) with linespoints title sprintf('k0=%d', k)\n",
    "fig6a": "set xlabel 'k0'\nset ylabel 'tau/tau0'\nset view map\n"
             "splot DATA using 1:2:3 with points pt 5 palette notitle\n",
    "fig6b": "set xlabel 'N'\nset ylabel 'F'\n"
             "plot for [k in '0 3 7'] DATA using 1:($2==k ? $3 : 1/0) with linespoints title 'k0='.k\n",
    "fig6c": "set xlabel 'phi'\nset ylabel 'F'\n"
             "plot for [k in '0 7'] DATA using 1:($2==k ? $3 : 1/0) with linespoints title 'k0='.k\n",
    "spectrum": "set xlabel 'omega (rad/s)'\nset ylabel '|spectrum| (s)'\n"
                "plot DATA using 1:3 with lines notitle\n",
    "slope": "set logscale xy\nset xlabel 'm'\nset ylabel '1 - F'\nplot DATA using 1:2 with linespoints notitle\n",
}


def plot_script(key, csv_path) -> str:
    body = _PLOTS.get(key, "plot DATA using 1:2 with linespoints notitle\n")
    return (
        f"# gnuplot script for {csv_path}\n"
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        f"DATA = '{csv_path}'\n" + body
    )


# ----------------------------------------------------------------------------
# parser


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--engines", help="comma-separated engines: " + ", ".join(ENGINES))
    p.add_argument("--steps-per-period", type=int, default=100,
                   help="RK4 steps per fastest oscillation period (>= 100)")
    p.add_argument("--seed", type=int, default=None, help="reserved; all computations are deterministic")
    p.add_argument("--workers", type=int, default=1, help="worker processes for numeric sweeps")
    p.add_argument("--plot-script", help="also write a gnuplot script to this path")
    p.add_argument("--fq-ghz", type=float, default=5.0, help="index-0 qubit frequency in GHz")
    p.add_argument("--df-mhz", type=float, default=10.0, help="comb spacing in MHz")
    p.add_argument("--phi", type=float, default=DEFAULT_PHI, help="rotation angle in radians")
    return p


def _point_args(p, k0_default=0):
    p.add_argument("--n", type=int, help="number of tones (centered comb if --l/--r omitted)")
    p.add_argument("--l", type=int, help="leftmost index")
    p.add_argument("--r", type=int, help="rightmost index")
    p.add_argument("--k0", type=int, default=k0_default, help="target qubit index")
    p.add_argument("--tau-ns", type=float, default=100.0, help="pulse length in ns")


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="fdmqubit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig2", parents=[common], help="tone spectra for N = 5")
    p.add_argument("--tau-ratio", type=float, choices=(1.0, 0.5, 2.0), default=1.0)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("fig3", parents=[common], help="fidelity vs k0")
    p.add_argument("--variant", choices=("a", "b", "c"), default="a")
    p.set_defaults(func=cmd_fig3)

    p = sub.add_parser("fig4", parents=[common], help="rotation angles vs k0")
    p.set_defaults(func=cmd_fig4)

    p = sub.add_parser("fig5", parents=[common], help="infidelity slope vs m")
    p.add_argument("--points", action="store_true", help="emit the (k0, m, infidelity) points instead of fits")
    p.set_defaults(func=cmd_fig5)

    p = sub.add_parser("fig6", parents=[common], help="numeric parameter studies")
    p.add_argument("--panel", choices=("a", "b", "c"), default="a")
    p.set_defaults(func=cmd_fig6)

    p = sub.add_parser("fidelity", parents=[common], help="single-point gate fidelity")
    _point_args(p)
    p.add_argument("--engine", choices=ENGINES, default="numeric-full")
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("spectrum", parents=[common], help="spectrum of one tone")
    _point_args(p)
    p.add_argument("--k", type=int, default=0, help="tone index")
    p.add_argument("--window", type=float, default=6.0, help="half-width in units of the spacing")
    p.add_argument("--count", type=int, default=1201, help="number of frequency samples")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("slope", parents=[common], help="infidelity vs m = tau/tau0 with log-log fit")
    _point_args(p, k0_default=7)
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--engine", choices=ENGINES, default="magnus-reduction")
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("rerun", help="reproduce a CSV from its run manifest")
    p.add_argument("manifest", help="path to a .manifest.json file")
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--plot-script")
    p.set_defaults(func=None)
    return parser


def _manifest(args, key, started, elapsed):
    resolved = {k: v for k, v in vars(args).items() if k not in _NON_RESULT_KEYS}
    return {
        "tool": "fdmqubit",
        "version": __version__,
        "command": args.command,
        "table": key,
        "columns": list(COLUMNS[key]),
        "args": resolved,
        "started_utc": started,
        "wall_seconds": round(elapsed, 3),
        "python": platform.python_version(),
        "numpy": np.__version__,
    }


def _from_manifest(args, parser):
    with open(args.manifest) as fh:
        manifest = json.load(fh)
    if manifest.get("tool") != "fdmqubit":
        raise UsageError(f"{args.manifest} is not an fdmqubit manifest")
    saved = manifest["args"]
    command = saved["command"]
    # rebuild through the parser so defaults added later are still filled in
    ns = parser.parse_args([command])
    for k, v in saved.items():
        setattr(ns, k, v)
    ns.out, ns.workers, ns.plot_script = args.out, args.workers, args.plot_script
    return ns


def run(args, parser):
    if args.command == "rerun":
        args = _from_manifest(args, parser)
    if args.steps_per_period < 100:
        raise UsageError("--steps-per-period must be >= 100")

    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    t = time.perf_counter()
    key, rows = args.func(args)
    text = format_csv(COLUMNS[key], rows)
    elapsed = time.perf_counter() - t

    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        with open(args.out + ".manifest.json", "w") as fh:
            json.dump(_manifest(args, key, started, elapsed), fh, indent=2, sort_keys=True)
            fh.write("\n")
    elif args.command != "fidelity":
        sys.stdout.write(text)

    if args.plot_script:
        with open(args.plot_script, "w") as fh:
            fh.write(plot_script(key, args.out or "data.csv"))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args, parser)
    except UsageError as exc:
        print(f"fdmqubit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FDMError as exc:
        print(f"fdmqubit: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    except OSError as exc:
        print(f"fdmqubit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
