"""CSV emission and figure rendering for the canonical experiment presets.

Each preset reproduces one published-figure dataset as one CSV per panel,
with an optional rendered PNG next to it.  CSV bytes are a pure function of
(config, seed, package version): floats are formatted with a fixed %.12g,
rows follow grid order, and no timestamps or host information are written.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from . import __version__, analytic, asymptotic, efrc, montecarlo, optimizer
from .ofdma import ofdma_thresholds

__all__ = [
    "preset_fig2",
    "preset_fig3",
    "preset_fig4",
    "preset_fig5",
    "preset_fig6",
    "render_lines",
    "simulate_rows",
    "write_csv",
    "write_json",
]

_FMT = "%.12g"

PB_GRID_DBM = tuple(float(v) for v in range(0, 31, 5))
DBN_GRID_M = (5.0, 10.0, 15.0, 20.0, 25.0, 30.0)

# allocation grids for the full-model optimal-SOP presets; coarse enough to
# keep a whole preset in seconds, fine enough for smooth optimum curves
K_GRID = tuple(np.round(np.arange(1.05, 6.001, 0.05), 10))
ALLOC_GRID = tuple(np.round(np.arange(0.05, 0.951, 0.05), 10))
FINE_K_GRID = tuple(np.round(np.arange(1.01, 4.001, 0.01), 10))
FINE_ALLOC_GRID = tuple(np.round(np.arange(0.01, 0.991, 0.01), 10))

R_GRID = tuple(np.round(np.arange(0.0, 1.0001, 0.01), 10))


def _format(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return _FMT % float(value)


def write_csv(path, header, rows, config_hash, seed):
    """Write one CSV with the provenance comment line; returns the path."""
    lines = [f"# swiptcoop={__version__} config_sha256={config_hash} seed={seed}"]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_format(v) for v in row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def write_json(path_or_none, payload):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path_or_none is None:
        return text
    with open(path_or_none, "w") as fh:
        fh.write(text + "\n")
    return path_or_none


def render_lines(path, x, series, xlabel, ylabel, title, logy=True):
    """Render one panel: ``series`` maps label -> y array; NaNs are gaps."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    markers = ["o", "s", "^", "D", "v", "<", ">", "p"]
    for i, (label, ys) in enumerate(series.items()):
        ax.plot(x, ys, marker=markers[i % len(markers)], markersize=4,
                linewidth=1.4, label=label)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def simulate_rows(protocol, params, trials, seed, workers=1):
    """One cmd-simulate row: estimate plus the columns the CSV carries."""
    est = montecarlo.estimate(protocol, params, trials, seed, workers)
    row = {
        "protocol": protocol,
        "P_B_dBm": 10.0 * math.log10(params.total_power_PB),
        "op_N": est.op_N,
        "op_F": est.op_F,
        "sop": est.sop,
        "ci_N": est.ci_half_width_N,
        "ci_F": est.ci_half_width_F,
        "ci_sys": est.ci_half_width_sys,
        "trials": trials,
        "seed": seed,
    }
    return est, row


_ANALYTIC_FNS = {
    "csanc": analytic.outage_csanc,
    "isanc": analytic.outage_isanc,
    "isaoc": analytic.outage_isaoc,
}


def _emit(outdir, name, header, rows, config_hash, seed, plot, plot_args):
    paths = [write_csv(os.path.join(outdir, name + ".csv"),
                       header, rows, config_hash, seed)]
    if plot:
        paths.append(render_lines(os.path.join(outdir, name + ".png"), **plot_args))
    return paths


def preset_fig2(params, sim, outdir, config_hash, plot=True, pb_grid=PB_GRID_DBM):
    """Outage vs P_B: analytic and simulated columns, one CSV per panel."""
    metrics = {"sop": "sop", "op_F": "op_F", "op_N": "op_N"}
    data = {m: {} for m in metrics}
    for protocol in ("csanc", "isanc", "isaoc"):
        ana, mc, ci = [], [], []
        for pb_dbm in pb_grid:
            point = params.replace(total_power_PB=10.0 ** (pb_dbm / 10.0))
            res = _ANALYTIC_FNS[protocol](point)
            est = montecarlo.estimate(protocol, point, sim.trials, sim.seed, sim.workers)
            ana.append(res)
            mc.append(est)
        data["sop"][protocol] = [(r.sop, e.sop, e.ci_half_width_sys) for r, e in zip(ana, mc)]
        data["op_F"][protocol] = [(r.op_F, e.op_F, e.ci_half_width_F) for r, e in zip(ana, mc)]
        data["op_N"][protocol] = [(r.op_N, e.op_N, e.ci_half_width_N) for r, e in zip(ana, mc)]

    paths = []
    for metric in metrics:
        header = ["pb_dbm"]
        for protocol in ("csanc", "isanc", "isaoc"):
            header += [f"{protocol}_analytic", f"{protocol}_sim", f"{protocol}_ci_half"]
        rows = []
        for i, pb_dbm in enumerate(pb_grid):
            row = [pb_dbm]
            for protocol in ("csanc", "isanc", "isaoc"):
                row.extend(data[metric][protocol][i])
            rows.append(row)
        series = {}
        for protocol in ("csanc", "isanc", "isaoc"):
            series[f"{protocol} analytic"] = [v[0] for v in data[metric][protocol]]
            series[f"{protocol} simulated"] = [v[1] for v in data[metric][protocol]]
        paths += _emit(outdir, f"fig2_{metric}", header, rows, config_hash, sim.seed,
                       plot, dict(x=list(pb_grid), series=series, xlabel="P_B (dBm)",
                                  ylabel=metric, title=f"{metric} vs P_B"))
    return paths


def _optimal_triple(params):
    """Per-protocol optimal-SOP point (sop, op_N, op_F, alloc) at these params."""
    out = {}
    for protocol in ("csanc", "isanc"):
        res = optimizer.minimize_sop(protocol, params, k_grid=K_GRID, backend="analytic")
        best = min(res.surface, key=lambda p: p["sop"])
        out[protocol] = (best["sop"], best["op_N"], best["op_F"], {"k": best["k"]})
    res = optimizer.minimize_sop("isaoc", params, rho_grid=ALLOC_GRID,
                                 theta_grid=ALLOC_GRID, backend="analytic")
    best = min(res.surface, key=lambda p: p["sop"])
    out["isaoc"] = (best["sop"], best["op_N"], best["op_F"],
                    {"rho": best["rho"], "theta": best["theta"]})
    return out


def _optimal_panels(xs, points, xlabel, stem, outdir, config_hash, seed, plot):
    paths = []
    panels = [("sop", 0, f"{stem}_optimal_sop"), ("op_F", 2, f"{stem}_op_F_at_opt"),
              ("op_N", 1, f"{stem}_op_N_at_opt")]
    for metric, idx, name in panels:
        header = [xlabel, "csanc", "isanc", "isaoc"]
        if metric == "sop":
            header += ["csanc_k", "isanc_k", "isaoc_rho", "isaoc_theta"]
        rows = []
        for x, point in zip(xs, points):
            row = [x, point["csanc"][idx], point["isanc"][idx], point["isaoc"][idx]]
            if metric == "sop":
                row += [point["csanc"][3]["k"], point["isanc"][3]["k"],
                        point["isaoc"][3]["rho"], point["isaoc"][3]["theta"]]
            rows.append(row)
        series = {p: [point[p][idx] for point in points]
                  for p in ("csanc", "isanc", "isaoc")}
        paths += _emit(outdir, name, header, rows, config_hash, seed, plot,
                       dict(x=list(xs), series=series, xlabel=xlabel,
                            ylabel=metric, title=f"{metric} at optimal allocation"))
    return paths


def preset_fig3(params, sim, outdir, config_hash, plot=True, pb_grid=PB_GRID_DBM):
    """Optimal SOP (and the per-user OPs at the optimum) vs P_B."""
    points = []
    for pb_dbm in pb_grid:
        point = params.replace(total_power_PB=10.0 ** (pb_dbm / 10.0))
        points.append(_optimal_triple(point))
    return _optimal_panels(pb_grid, points, "pb_dbm", "fig3", outdir,
                           config_hash, sim.seed, plot)


def preset_fig4(params, sim, outdir, config_hash, plot=True, dbn_grid=DBN_GRID_M):
    """Optimal SOP vs the cell-center user's position, with d_NF = d_BF - d_BN."""
    points = []
    for d_bn in dbn_grid:
        if not 0.0 < d_bn < params.d_BF:
            raise ValueError(f"d_BN must lie in (0, d_BF); got {d_bn}")
        point = params.replace(d_BN=d_bn, d_NF=params.d_BF - d_bn)
        points.append(_optimal_triple(point))
    return _optimal_panels(dbn_grid, points, "d_bn_m", "fig4", outdir,
                           config_hash, sim.seed, plot)


# (theta, rho) variants shown on the DMT panels; balanced theta=0.5 plus the
# two skewed-but-consistent splits and one improper split that lowers both AMGs
_ISAOC_DMT_CASES = (
    ("isaoc_t05_r05", 0.5, 0.5),
    ("isaoc_t07_r03", 0.7, 0.3),
    ("isaoc_t03_r07", 0.3, 0.7),
    ("isaoc_t07_r05", 0.7, 0.5),
)


def _isaoc_regime(params, theta, rho):
    point = params.replace(freq_fraction_theta=theta, power_fraction_rho=rho)
    return ofdma_thresholds(point)[2]


def preset_fig5(params, sim, outdir, config_hash, plot=True, r_grid=R_GRID):
    """DMT curves for each protocol/user and both allocation-growth regimes."""
    rs = list(r_grid)
    curves_f = {
        "csanc_a_gt1": [asymptotic.dmt("csanc", "F", r, a=2.0, b=0.0) for r in rs],
        "csanc_a_eq1": [asymptotic.dmt("csanc", "F", r, a=1.0, b=1.0) for r in rs],
        "isanc_a_gt1": [asymptotic.dmt("isanc", "F", r, a=2.0, b=0.0) for r in rs],
        "isanc_a_eq1": [asymptotic.dmt("isanc", "F", r, a=1.0, b=1.0) for r in rs],
    }
    curves_n = {
        "csanc": [asymptotic.dmt("csanc", "N", r, a=2.0, b=0.0) for r in rs],
        "isanc": [asymptotic.dmt("isanc", "N", r, a=2.0, b=0.0) for r in rs],
    }
    for label, theta, rho in _ISAOC_DMT_CASES:
        regime = _isaoc_regime(params, theta, rho)
        curves_f[label] = [asymptotic.dmt("isaoc", "F", r, theta=theta, regime=regime)
                           for r in rs]
        curves_n[label] = [asymptotic.dmt("isaoc", "N", r, theta=theta, regime=regime)
                           for r in rs]

    paths = []
    for name, curves in (("fig5_dmt_user_F", curves_f), ("fig5_dmt_user_N", curves_n)):
        header = ["r"] + list(curves)
        rows = [[r] + [curves[c][i] for c in curves] for i, r in enumerate(rs)]
        paths += _emit(outdir, name, header, rows, config_hash, sim.seed, plot,
                       dict(x=rs, series=curves, xlabel="multiplexing gain r",
                            ylabel="diversity order d", title=name, logy=False))
    return paths


def preset_fig6(params, sim, outdir, config_hash, plot=True, k_grid=FINE_K_GRID):
    """EFRC SOP vs power allocation, with isaoc's frequency split re-optimized.

    The isaoc column reuses the NOMA sweep variable through rho = k/(1+k) and
    picks the best theta by grid search at every point.
    """
    thetas = FINE_ALLOC_GRID
    header = ["k", "csanc_efrc_sop", "isanc_efrc_sop",
              "isaoc_efrc_opt_sop", "isaoc_theta_opt"]
    rows = []
    series = {"csanc": [], "isanc": [], "isaoc (best theta)": []}
    for k in k_grid:
        point = params.replace(power_ratio_k=float(k))
        csanc_v = efrc.efrc_sop_csanc(point)
        isanc_v = efrc.efrc_sop_isanc(point)
        rho = float(k) / (1.0 + float(k))
        res = optimizer.minimize_sop("isaoc", point.replace(power_fraction_rho=rho),
                                     rho_grid=(rho,), theta_grid=thetas, backend="efrc")
        rows.append([k, csanc_v, isanc_v, res.best_sop, res.best_alloc["theta"]])
        series["csanc"].append(csanc_v)
        series["isanc"].append(isanc_v)
        series["isaoc (best theta)"].append(res.best_sop)
    return _emit(outdir, "fig6_efrc_sop", header, rows, config_hash, sim.seed, plot,
                 dict(x=list(k_grid), series=series, xlabel="power allocation k",
                      ylabel="EFRC SOP", title="EFRC SOP vs power allocation"))
