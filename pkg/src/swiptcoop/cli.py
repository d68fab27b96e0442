"""Command-line front end.

Subcommands map one-to-one onto the experiment kinds: ``simulate`` (Monte
Carlo), ``analytic`` (closed forms), ``sweep`` (outage vs one axis, preset
fig2/fig4), ``dmt`` (trade-off curves, preset fig5), ``efrc`` (error-free
relaying limit, preset fig6) and ``optimize`` (allocation grid search, preset
fig3).  Exit codes: 0 ok, 2 usage, 3 parameter validation, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from importlib.resources import files

import numpy as np

from . import __version__, analytic, report
from .montecarlo import estimate
from .numerics import DomainError, QuadratureError
from .optimizer import minimize_sop
from .params import (
    PROTOCOLS,
    ValidationError,
    config_digest_bytes,
    load_config_string,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERIC = 4


class UsageError(Exception):
    pass


def _load_config(path):
    """Returns (params, sim_settings, digest); None selects the shipped defaults."""
    if path is None:
        data = files("swiptcoop").joinpath("data/defaults.ini").read_bytes()
    else:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise ValidationError(f"config file not found or unreadable: {path}") from exc
    params, sim = load_config_string(data.decode())
    return params, sim, config_digest_bytes(data)


def _parse_grid(spec, name):
    """'start:stop:step' (inclusive stop, within half a step) -> tuple of floats."""
    try:
        start, stop, step = (float(v) for v in spec.split(":"))
    except ValueError as exc:
        raise UsageError(f"--{name} expects start:stop:step, got {spec!r}") from exc
    if step <= 0 or stop < start:
        raise UsageError(f"--{name} needs step > 0 and stop >= start, got {spec!r}")
    n = int(round((stop - start) / step))
    return tuple(np.round(start + step * np.arange(n + 1), 12))


def _write_rows(out, header, rows, digest, seed):
    if out is None:
        print(f"# swiptcoop={__version__} config_sha256={digest} seed={seed}")
        print(",".join(header))
        for row in rows:
            print(",".join(report._format(v) for v in row))
        return
    report.write_csv(out, header, rows, digest, seed)
    print(out)


def _outdir(args):
    outdir = args.out or "figures"
    os.makedirs(outdir, exist_ok=True)
    return outdir


def _cmd_simulate(args):
    params, sim, digest = _load_config(args.config)
    trials = args.trials if args.trials is not None else sim.trials
    seed = args.seed if args.seed is not None else sim.seed
    workers = args.workers if args.workers is not None else sim.workers
    if trials < 1:
        raise UsageError(f"--trials must be >= 1, got {trials}")
    if workers < 1:
        raise UsageError(f"--workers must be >= 1, got {workers}")

    est, row = report.simulate_rows(args.protocol, params, trials, seed, workers)
    if est.noise_dominated:
        print(
            f"warning: fewer than 100 failures in at least one counter "
            f"(N={est.failures_N}, F={est.failures_F}, sys={est.failures_sys}); "
            "confidence intervals are noise-dominated, raise --trials",
            file=sys.stderr,
        )
    if args.format == "json":
        text = report.write_json(args.out, row)
        print(text if args.out is None else args.out)
    else:
        _write_rows(args.out, list(row), [list(row.values())], digest, seed)
    return EXIT_OK


def _cmd_analytic(args):
    params, sim, digest = _load_config(args.config)
    fns = {"csanc": analytic.outage_csanc, "isanc": analytic.outage_isanc,
           "isaoc": analytic.outage_isaoc}
    res = fns[args.protocol](params)
    row = {
        "protocol": args.protocol,
        "P_B_dBm": 10.0 * math.log10(params.total_power_PB),
        "op_N": res.op_N,
        "op_F": res.op_F,
        "sop": res.sop,
    }
    if args.format == "json":
        text = report.write_json(args.out, row)
        print(text if args.out is None else args.out)
    else:
        _write_rows(args.out, list(row), [list(row.values())], digest, sim.seed)
    return EXIT_OK


_AXIS_FIELDS = {
    "pb": ("total_power_PB", "pb_dbm"),
    "d_bn": ("d_BN", "d_bn_m"),
    "k": ("power_ratio_k", "k"),
    "theta": ("freq_fraction_theta", "theta"),
}


def _cmd_sweep(args):
    params, sim, digest = _load_config(args.config)
    if args.preset == "fig2":
        paths = report.preset_fig2(params, sim, _outdir(args), digest, plot=not args.no_plot)
        print("\n".join(paths))
        return EXIT_OK
    if args.preset == "fig4":
        paths = report.preset_fig4(params, sim, _outdir(args), digest, plot=not args.no_plot)
        print("\n".join(paths))
        return EXIT_OK

    if args.axis is None or args.grid is None:
        raise UsageError("sweep needs --axis and --grid (or a --preset)")
    field, label = _AXIS_FIELDS[args.axis]
    grid = _parse_grid(args.grid, "grid")
    protocols = PROTOCOLS if args.protocol == "all" else (args.protocol,)

    header = [label]
    for protocol in protocols:
        header += [f"{protocol}_op_N", f"{protocol}_op_F", f"{protocol}_sop"]
    fns = {"csanc": analytic.outage_csanc, "isanc": analytic.outage_isanc,
           "isaoc": analytic.outage_isaoc}
    rows = []
    for value in grid:
        actual = 10.0 ** (value / 10.0) if args.axis == "pb" else float(value)
        point = params.replace(**{field: actual})
        row = [value]
        for protocol in protocols:
            res = fns[protocol](point)
            row += [res.op_N, res.op_F, res.sop]
        rows.append(row)
    _write_rows(args.out, header, rows, digest, sim.seed)
    return EXIT_OK


def _cmd_dmt(args):
    params, sim, digest = _load_config(args.config)
    paths = report.preset_fig5(params, sim, _outdir(args), digest, plot=not args.no_plot)
    print("\n".join(paths))
    return EXIT_OK


def _cmd_efrc(args):
    params, sim, digest = _load_config(args.config)
    paths = report.preset_fig6(params, sim, _outdir(args), digest, plot=not args.no_plot)
    print("\n".join(paths))
    return EXIT_OK


def _cmd_optimize(args):
    params, sim, digest = _load_config(args.config)
    if args.preset == "fig3":
        paths = report.preset_fig3(params, sim, _outdir(args), digest, plot=not args.no_plot)
        print("\n".join(paths))
        return EXIT_OK

    kwargs = {}
    if args.protocol in ("csanc", "isanc"):
        if args.k_grid is None:
            raise UsageError("NOMA optimize needs --k-grid start:stop:step")
        kwargs["k_grid"] = _parse_grid(args.k_grid, "k-grid")
    else:
        if args.rho_grid is None or args.theta_grid is None:
            raise UsageError("isaoc optimize needs --rho-grid and --theta-grid")
        kwargs["rho_grid"] = _parse_grid(args.rho_grid, "rho-grid")
        kwargs["theta_grid"] = _parse_grid(args.theta_grid, "theta-grid")

    res = minimize_sop(args.protocol, params, backend=args.backend, **kwargs)
    summary = {"protocol": args.protocol, "backend": args.backend,
               "best_sop": res.best_sop, **{f"best_{k}": v for k, v in res.best_alloc.items()}}
    if args.format == "json":
        text = report.write_json(args.out, summary)
        print(text if args.out is None else args.out)
        return EXIT_OK
    if args.surface:
        header = list(res.surface[0])
        rows = [[point[c] for c in header] for point in res.surface]
    else:
        header = list(summary)
        rows = [list(summary.values())]
    _write_rows(args.out, header, rows, digest, sim.seed)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="swiptcoop",
        description="SWIPT-assisted two-user cooperation: outage simulation and analysis",
    )
    parser.add_argument("--version", action="version", version=f"swiptcoop {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, protocol=True, fmt=True):
        p.add_argument("--config", help="config file (default: shipped defaults)")
        if protocol:
            p.add_argument("--protocol", choices=PROTOCOLS, required=True)
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("simulate", help="Monte Carlo outage estimate")
    common(p)
    p.add_argument("--trials", type=int, help="trial count (default from config)")
    p.add_argument("--seed", type=int, help="RNG seed (default from config)")
    p.add_argument("--workers", type=int, help="parallel workers (default from config)")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("analytic", help="closed-form outage probabilities")
    common(p)
    p.set_defaults(fn=_cmd_analytic)

    p = sub.add_parser("sweep", help="outage vs one parameter axis (presets fig2, fig4)")
    p.add_argument("--config")
    p.add_argument("--axis", choices=tuple(_AXIS_FIELDS))
    p.add_argument("--grid", help="start:stop:step (pb axis in dBm)")
    p.add_argument("--protocol", choices=PROTOCOLS + ("all",), default="all")
    p.add_argument("--preset", choices=("fig2", "fig4"))
    p.add_argument("--out", help="CSV path, or output dir for presets")
    p.add_argument("--no-plot", action="store_true", help="presets: skip PNG rendering")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("dmt", help="diversity-multiplexing trade-off curves (fig5)")
    p.add_argument("--config")
    p.add_argument("--preset", choices=("fig5",), default="fig5")
    p.add_argument("--out", help="output dir (default: figures)")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(fn=_cmd_dmt)

    p = sub.add_parser("efrc", help="error-free relaying limit curves (fig6)")
    p.add_argument("--config")
    p.add_argument("--preset", choices=("fig6",), default="fig6")
    p.add_argument("--out", help="output dir (default: figures)")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(fn=_cmd_efrc)

    p = sub.add_parser("optimize", help="allocation grid search (preset fig3)")
    common(p)
    p.add_argument("--backend", choices=("analytic", "efrc"), default="analytic")
    p.add_argument("--k-grid", help="start:stop:step for the NOMA power ratio")
    p.add_argument("--rho-grid", help="start:stop:step for the OFDMA power fraction")
    p.add_argument("--theta-grid", help="start:stop:step for the OFDMA frequency fraction")
    p.add_argument("--surface", action="store_true", help="emit the full surface as CSV")
    p.add_argument("--preset", choices=("fig3",))
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(fn=_cmd_optimize)

    return parser


def main(argv=None):
    parser = build_parser()
    # optimize's --protocol is irrelevant when a preset drives all three
    if argv is None:
        argv = sys.argv[1:]
    if "optimize" in argv[:1] and "--preset" in argv and "--protocol" not in argv:
        argv = list(argv) + ["--protocol", "csanc"]
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, DomainError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (QuadratureError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
