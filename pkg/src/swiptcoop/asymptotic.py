r"""High-SNR leading orders, empirical diversity slopes, NSE and DMT formulas.

The direct-decode event probabilities decay like 1/P_B with closed
coefficients; the relay-failure events decay like log(P_B)/P_B^2, two of them
with a residual single integral over [0, 1] (evaluated with the shared
quadrature engine; the integrand's log endpoint singularity is removable and
the rule never touches endpoints) and one in fully closed log form.

A note on the F-assists-N term in the {NDF=0} case: its direct branch keeps
the cell-edge interference, so the SINR shortfall along the substituted unit
interval is ``g - s*g/(k*s*g + k - g)`` (interference-limited, never reaching
zero), not the ``g - k*s*g/(s*g + k - g)`` shape of the mirrored
N-assists-F term.  With the correct shape every exact/asymptotic ratio tends
to 1; with the mirrored shape that term is off by roughly 2x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import analytic, montecarlo
from .analytic import NomaEventProbs, OfdmaEventProbs
from .numerics import DomainError, quadrature
from .params import PROTOCOLS, validate

__all__ = [
    "DmtCurve",
    "SlopeFit",
    "diversity_slope",
    "dmt",
    "dmt_curve",
    "highsnr_noma_event_probs",
    "highsnr_ofdma_event_probs",
    "nse",
]

USERS = ("N", "F")


def highsnr_noma_event_probs(params, tol=1e-11) -> NomaEventProbs:
    """Leading-order NOMA event probabilities at the params' P_B."""
    validate(params, "isanc")
    pb = params.total_power_PB
    g = 2.0 ** params.rate_R - 1.0
    two_r = 2.0 ** params.rate_R
    k = params.power_ratio_k
    d_N = params.d_BN ** params.alpha * params.sigma2_N
    d_F = params.d_BF ** params.alpha * params.sigma2_F
    lam_BN, lam_BF, lam_NF = params.lambda_BN, params.lambda_BF, params.lambda_NF
    gap = k - g

    p_ndf0 = d_N * g * (1.0 + k) / (lam_BN * gap) / pb
    p_fdf0 = d_F * g * (1.0 + k) / (lam_BF * gap) / pb
    if k > two_r:
        p_ndf1_ndn0 = d_N * g * (1.0 + k) * (k - two_r) / (lam_BN * gap) / pb
        p_fdf1_fdn0 = d_F * g * (1.0 + k) * (k - two_r) / (lam_BF * gap) / pb
    else:
        p_ndf1_ndn0 = 0.0
        p_fdf1_fdn0 = 0.0

    # residual [0,1] integrals of ln(Lambda/w)*w for the two MRC-failure terms
    big_N = lam_BN * lam_NF * params.eta * pb / (
        params.d_BN ** params.alpha * params.d_NF ** params.alpha * params.sigma2_F)
    big_F = lam_BF * lam_NF * params.eta * pb / (
        params.d_BF ** params.alpha * params.d_NF ** params.alpha * params.sigma2_N)

    def shortfall_helped_F(s):
        # receiver F, direct branch interference-free of the shortfall scale
        return g - k * s * g / (s * g + gap)

    def shortfall_helped_N(s):
        # receiver N never cancelled the cell-edge message: interference-limited
        return g - s * g / (k * s * g + gap)

    j_N = quadrature(lambda s: np.log(big_N / shortfall_helped_F(s))
                     * shortfall_helped_F(s), 0.0, 1.0, tol=tol)
    j_F = quadrature(lambda s: np.log(big_F / shortfall_helped_N(s))
                     * shortfall_helped_N(s), 0.0, 1.0, tol=tol)

    relay_coef = (params.d_BF ** params.alpha * params.d_BN ** params.alpha
                  * params.d_NF ** params.alpha * g * (1.0 + k)
                  / (lam_BF * lam_BN * lam_NF * params.eta * gap))
    p_nhf0 = relay_coef * params.sigma2_F ** 2 * j_N / pb ** 2
    p_fhn0_ndf0 = relay_coef * params.sigma2_N ** 2 * j_F / pb ** 2

    if k > two_r:
        coef = (params.d_BF ** params.alpha * params.d_BN ** params.alpha
                * params.d_NF ** params.alpha * params.sigma2_N ** 2
                * g ** 2 * (1.0 + k) * (k - two_r) ** 2
                / (lam_BF * lam_BN * lam_NF * params.eta * gap ** 2))
        p_fhn0_ndf1 = coef * (math.log(math.sqrt(big_F / g))
                              + (1.0 - 2.0 * math.log((k - two_r) / gap)) / 4.0) / pb ** 2
    else:
        p_fhn0_ndf1 = 0.0

    return NomaEventProbs(
        p_ndf0=p_ndf0, p_fdf0=p_fdf0,
        p_ndf1_ndn0=p_ndf1_ndn0, p_fdf1_fdn0=p_fdf1_fdn0,
        p_nhf0=p_nhf0, p_fhn0_ndf0=p_fhn0_ndf0, p_fhn0_ndf1=p_fhn0_ndf1,
    )


def highsnr_ofdma_event_probs(params) -> OfdmaEventProbs:
    """Leading-order OFDMA event probabilities at the params' P_B.

    The full-decode probabilities are returned as 1 minus their leading
    complements so the type matches the exact evaluator's.
    """
    validate(params, "isaoc")
    pb = params.total_power_PB
    theta = params.freq_fraction_theta
    rho = params.power_fraction_rho
    g_F = 2.0 ** (params.rate_R / theta) - 1.0
    g_N = 2.0 ** (params.rate_R / (1.0 - theta)) - 1.0
    d_N = params.d_BN ** params.alpha * params.sigma2_N
    d_F = params.d_BF ** params.alpha * params.sigma2_F
    lam_BN, lam_BF, lam_NF = params.lambda_BN, params.lambda_BF, params.lambda_NF
    req_N = (1.0 - theta) * g_N / (1.0 - rho)  # times 1/P_B
    req_F = theta * g_F / rho
    regime = req_N > req_F

    p_ndn0 = d_N * req_N / lam_BN / pb
    p_fdf0 = d_F * req_F / lam_BF / pb
    binding = req_N if regime else req_F
    one_m_ndf1_ndn1 = d_N * binding / lam_BN / pb
    one_m_fdf1_fdn1 = d_F * binding / lam_BF / pb
    p_fdf1_fdn0 = d_F / lam_BF * (req_N - req_F) / pb if regime else 0.0

    big_N = lam_BN * lam_NF * params.eta * pb / (
        params.d_BN ** params.alpha * params.d_NF ** params.alpha
        * params.sigma2_F * theta)
    big_F = lam_BF * lam_NF * params.eta * pb / (
        params.d_BF ** params.alpha * params.d_NF ** params.alpha
        * params.sigma2_N * (1.0 - theta))
    pathloss = (params.d_BF ** params.alpha * params.d_BN ** params.alpha
                * params.d_NF ** params.alpha)
    p_nhf0 = (pathloss * params.sigma2_F ** 2 * theta ** 2 * g_F ** 2
              / (lam_BF * lam_BN * lam_NF * params.eta * rho)
              * (math.log(math.sqrt(big_N / g_F)) + 0.25) / pb ** 2)
    p_fhn0 = (pathloss * params.sigma2_N ** 2 * (1.0 - theta) ** 2 * g_N ** 2
              / (lam_BN * lam_BF * lam_NF * params.eta * (1.0 - rho))
              * (math.log(math.sqrt(big_F / g_N)) + 0.25) / pb ** 2)

    return OfdmaEventProbs(
        p_ndn0=p_ndn0, p_fdf0=p_fdf0,
        p_ndf1_ndn1=1.0 - one_m_ndf1_ndn1, p_fdf1_fdn1=1.0 - one_m_fdf1_fdn1,
        p_fdf1_fdn0=p_fdf1_fdn0, p_nhf0=p_nhf0, p_fhn0=p_fhn0,
    )


def nse(rate, total_power, lam, distance, sigma2, alpha):
    """Normalized spectral efficiency r = R / log2(1 + P*lam/(d^alpha*sigma^2))."""
    if min(rate, total_power, lam, distance, sigma2) <= 0.0 or alpha < 0.0:
        raise DomainError("nse arguments must be positive (alpha >= 0)")
    return rate / math.log2(1.0 + total_power * lam / (distance ** alpha * sigma2))


def _check_ab(a, b):
    if a is None or b is None:
        raise DomainError("NOMA DMT needs the allocation-growth factors (a, b)")
    if not ((a == 1.0 and b > 0.0) or (a > 1.0 and b >= 0.0)):
        raise DomainError(f"require a=1,b>0 or a>1,b>=0; got a={a!r}, b={b!r}")


def dmt(protocol, user, r, a=None, b=None, theta=None, regime=None):
    """Diversity order at multiplexing gain r, clamped at zero.

    NOMA protocols key on the allocation growth law k = a*(2^R - 1) + b: a > 1
    improves the cell-edge user's trade-off from 2-4r to 2-3r.  isaoc keys on
    the frequency fraction theta and the binding regime (see
    :func:`swiptcoop.ofdma.ofdma_thresholds`).
    """
    if protocol not in PROTOCOLS:
        raise DomainError(f"unknown protocol {protocol!r}")
    if user not in USERS:
        raise DomainError(f"user must be 'N' or 'F', got {user!r}")
    if r < 0.0:
        raise DomainError(f"multiplexing gain must be >= 0, got {r!r}")

    if protocol == "isaoc":
        if theta is None or not 0.0 < theta < 1.0 or regime is None:
            raise DomainError("isaoc DMT needs theta in (0,1) and the regime flag")
        if regime:
            if user == "N":
                d = 2.0 - 2.0 * r / (1.0 - theta)
            else:
                d = min(2.0 - r / (theta * (1.0 - theta)), 2.0 - 2.0 * r / theta)
        else:
            if user == "N":
                d = min(2.0 - r / (theta * (1.0 - theta)), 2.0 - 2.0 * r / (1.0 - theta))
            else:
                d = 2.0 - 2.0 * r / theta
        return max(d, 0.0)

    _check_ab(a, b)
    if user == "N":
        d = 1.0 - 2.0 * r if protocol == "csanc" else 2.0 - 4.0 * r
    else:
        d = 2.0 - 3.0 * r if a > 1.0 else 2.0 - 4.0 * r
    return max(d, 0.0)


@dataclass(frozen=True)
class DmtCurve:
    """Sampled diversity-multiplexing trade-off for one protocol/user pair."""

    protocol: str
    user: str
    samples: tuple  # of (r, d) pairs, r increasing
    meta: dict = field(default_factory=dict)

    @property
    def achievable_diversity(self):
        return self.samples[0][1]


def dmt_curve(protocol, user, r_grid, **kwargs) -> DmtCurve:
    """Evaluate :func:`dmt` over a grid of multiplexing gains."""
    samples = tuple((float(r), dmt(protocol, user, float(r), **kwargs)) for r in r_grid)
    return DmtCurve(protocol=protocol, user=user, samples=samples, meta=dict(kwargs))


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares log-log decay slopes (= empirical diversity orders)."""

    slope_N: float
    slope_F: float
    slope_sop: float
    pb_grid_dbm: tuple


def diversity_slope(protocol, params, pb_grid_dbm, backend="analytic",
                    trials=1_000_000, seed=0, workers=1) -> SlopeFit:
    """Fit -log10(OP) against log10(P_B) over a power sweep.

    The analytic backend is the default: verifying slope 2 empirically needs
    outage counts at probabilities far below what desk-scale Monte Carlo can
    resolve.  Raises if any outage value is exactly zero (lower P_B or raise
    the trial count).
    """
    grid = sorted(float(p) for p in pb_grid_dbm)
    if len(grid) < 2:
        raise ValueError("need at least two P_B grid points")
    if grid[-1] - grid[0] < 20.0:
        raise ValueError("P_B grid must span at least 20 dB for a stable fit")
    if backend not in ("analytic", "montecarlo"):
        raise ValueError(f"unknown backend {backend!r}")

    fns = {"csanc": analytic.outage_csanc, "isanc": analytic.outage_isanc,
           "isaoc": analytic.outage_isaoc}
    rows = []
    for pb_dbm in grid:
        point = params.replace(total_power_PB=10.0 ** (pb_dbm / 10.0))
        if backend == "analytic":
            res = fns[protocol](point)
            triple = (res.op_N, res.op_F, res.sop)
        else:
            est = montecarlo.estimate(protocol, point, trials, seed, workers)
            triple = (est.op_N, est.op_F, est.sop)
        if min(triple) <= 0.0:
            raise ValueError(
                f"outage probability is 0 at P_B = {pb_dbm} dBm; "
                "lower P_B or raise the trial count")
        rows.append(triple)

    log_pb = np.array(grid) / 10.0  # dBm/10 == log10(P_B in mW)
    ops = np.array(rows)
    slopes = [np.polyfit(log_pb, -np.log10(ops[:, i]), 1)[0] for i in range(3)]
    return SlopeFit(slope_N=slopes[0], slope_F=slopes[1], slope_sop=slopes[2],
                    pb_grid_dbm=tuple(grid))
