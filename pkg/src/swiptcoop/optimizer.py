"""Exhaustive grid search for the allocation knobs that minimize SOP.

Plain enumeration, no gradients: the SOP surface has branch kinks at k = 2^R
and at the OFDMA binding-regime boundary, and the grids are small.  Ties break
toward the smallest allocation values so repeated runs emit identical
surfaces and minima.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import analytic, efrc
from .params import PROTOCOLS, ValidationError

__all__ = ["GridSearchResult", "minimize_sop"]

BACKENDS = ("analytic", "efrc")


@dataclass(frozen=True)
class GridSearchResult:
    """argmin of the SOP surface plus the surface itself.

    ``best_alloc`` maps knob name(s) to the winning grid value; ``surface``
    is one dict per evaluated grid point (allocation knobs, sop, and per-user
    OPs when the full-model backend produced them).
    """

    protocol: str
    backend: str
    best_alloc: dict
    best_sop: float
    surface: tuple


def _noma_point(protocol, params, k, backend):
    p = params.replace(power_ratio_k=k)
    if backend == "efrc":
        sop = efrc.efrc_sop_isanc(p) if protocol == "isanc" else efrc.efrc_sop_csanc(p)
        return {"k": k, "sop": sop}
    out = analytic.outage_isanc(p) if protocol == "isanc" else analytic.outage_csanc(p)
    return {"k": k, "sop": out.sop, "op_N": out.op_N, "op_F": out.op_F}


def _isaoc_point(params, rho, theta, backend):
    p = params.replace(power_fraction_rho=rho, freq_fraction_theta=theta)
    if backend == "efrc":
        return {"rho": rho, "theta": theta, "sop": efrc.efrc_sop_isaoc(p)}
    out = analytic.outage_isaoc(p)
    return {"rho": rho, "theta": theta, "sop": out.sop,
            "op_N": out.op_N, "op_F": out.op_F}


def minimize_sop(protocol, params, k_grid=None, rho_grid=None, theta_grid=None,
                 backend="analytic") -> GridSearchResult:
    """Minimize SOP over the allocation grid for one protocol.

    NOMA protocols search ``k_grid`` (values violating k > 2^R - 1 are
    dropped); isaoc searches the Cartesian product ``rho_grid x theta_grid``
    (values outside (0, 1) are dropped).  Raises :class:`ValidationError`
    when no valid grid point remains.
    """
    if protocol not in PROTOCOLS:
        raise ValidationError(f"unknown protocol {protocol!r}")
    if backend not in BACKENDS:
        raise ValidationError(f"unknown backend {backend!r}, expected one of {BACKENDS}")

    surface = []
    if protocol in ("csanc", "isanc"):
        if k_grid is None:
            raise ValidationError("NOMA grid search needs k_grid")
        bound = 2.0 ** params.rate_R - 1.0
        valid = sorted(float(k) for k in k_grid if float(k) > bound)
        if not valid:
            raise ValidationError(
                f"no k in the grid exceeds 2^R - 1 = {bound:g}; nothing to search")
        for k in valid:
            surface.append(_noma_point(protocol, params, k, backend))
        key = "k"
    else:
        if rho_grid is None or theta_grid is None:
            raise ValidationError("isaoc grid search needs rho_grid and theta_grid")
        rhos = sorted(float(r) for r in rho_grid if 0.0 < float(r) < 1.0)
        thetas = sorted(float(t) for t in theta_grid if 0.0 < float(t) < 1.0)
        if not rhos or not thetas:
            raise ValidationError("no (rho, theta) grid point lies inside (0, 1)^2")
        for rho in rhos:
            for theta in thetas:
                surface.append(_isaoc_point(params, rho, theta, backend))
        key = None

    best = surface[0]
    for point in surface[1:]:
        if point["sop"] < best["sop"]:  # strict: first (smallest alloc) wins ties
            best = point
    if key:
        alloc = {"k": best["k"]}
    else:
        alloc = {"rho": best["rho"], "theta": best["theta"]}
    return GridSearchResult(protocol=protocol, backend=backend, best_alloc=alloc,
                            best_sop=best["sop"], surface=tuple(surface))
