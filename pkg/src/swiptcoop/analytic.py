r"""Closed-form event probabilities and outage assembly for all three protocols.

Every outage probability decomposes into probabilities of named decode/relay
events over the exponential gains x = |h_BF|^2, y = |h_BN|^2, z = |h_NF|^2.
The direct-transmission events are single exponential CDF evaluations; each
relay-failure event integrates the conditional z-failure probability over the
helper's gain, which after the standard
:math:`\int_0^\infty e^{-\beta/(4u) - u/\lambda}\,du` identity leaves a
one-dimensional integral whose integrand carries
:math:`\psi(x) K_1(\psi(x))`.  Those integrals are evaluated numerically
rather than reduced further.

Numerical arrangement: the bracket
``1 - exp(-T/lam) - int_0^T psi*K1(psi) exp(-x/lam)/lam dx`` that the relay
terms reduce to is mathematically
``int_0^T (1 - psi*K1(psi)) exp(-x/lam)/lam dx`` because the exponential
density integrates to exactly the leading difference; the second form is a
positive integrand with no cancellation, which is what keeps the relay terms
accurate at high SNR where they shrink like log(P)/P^2 while the individual
bracket pieces only shrink like 1/P.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noma import decode_thresholds as noma_decode_thresholds
from .numerics import bessel_k1, one_minus_t_k1, quadrature, t_k1  # noqa: F401  (re-exported)
from .ofdma import decode_thresholds as ofdma_decode_thresholds
from .params import validate

__all__ = [
    "NomaEventProbs",
    "OfdmaEventProbs",
    "OutageProbs",
    "bessel_k1",
    "noma_event_probs",
    "ofdma_event_probs",
    "outage_csanc",
    "outage_isanc",
    "outage_isaoc",
    "quadrature",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class NomaEventProbs:
    """Probabilities of the NOMA decode/relay events (shared by csanc/isanc).

    p_nhf0 is shorthand for P{NHF=0, FDF=0, NDF=1, NDN=1}; p_fhn0_ndf0 for
    P{FHN=0, NDF=0, FDF=1, FDN=1}; p_fhn0_ndf1 for
    P{FHN=0, NDF=1, NDN=0, FDF=1, FDN=1}.  The two events conditioned on a
    user passing its first SIC stage but failing its own message are empty
    when k <= 2^R.
    """

    p_ndf0: float
    p_fdf0: float
    p_ndf1_ndn0: float
    p_fdf1_fdn0: float
    p_nhf0: float
    p_fhn0_ndf0: float
    p_fhn0_ndf1: float

    @property
    def p_ndn0(self):
        """P{NDN=0} = P{NDF=0} + P{NDF=1, NDN=0} (SIC order at N)."""
        return self.p_ndf0 + self.p_ndf1_ndn0

    @property
    def p_fdn0(self):
        """P{FDN=0} = P{FDF=0} + P{FDF=1, FDN=0} (SIC order at F)."""
        return self.p_fdf0 + self.p_fdf1_fdn0


@dataclass(frozen=True)
class OfdmaEventProbs:
    """Probabilities of the OFDMA decode/relay events (isaoc).

    p_nhf0 abbreviates P{NHF=0, FDF=0, NDF=1, NDN=1}; p_fhn0 abbreviates
    P{FHN=0, NDN=0, FDF=1, FDN=1}.  p_fdf1_fdn0 vanishes whenever the
    cell-edge message's power requirement binds (regime False).
    """

    p_ndn0: float
    p_fdf0: float
    p_ndf1_ndn1: float
    p_fdf1_fdn1: float
    p_fdf1_fdn0: float
    p_nhf0: float
    p_fhn0: float


@dataclass(frozen=True)
class OutageProbs:
    op_N: float
    op_F: float
    sop: float


def _survival_diff(a, b, lam):
    """exp(-a/lam) - exp(-b/lam) for b >= a, stable when both are tiny."""
    return -math.exp(-a / lam) * math.expm1((a - b) / lam)


def _relay_failure_integral(lo, hi, lam_helper, bracket_fn, scale, tol):
    """int_lo^hi exp(-v/lam)/lam * (1 - psi*K1(psi)) dv with psi = sqrt(scale*bracket).

    ``bracket_fn`` returns the SINR shortfall (target minus direct component),
    clamped at zero to absorb endpoint roundoff.  The upper limit is truncated
    at 60 helper-gain scales: beyond that the exponential weight is below
    1e-26 of the integral's mass, while an astronomically large threshold
    would otherwise leave the first quadrature panel sampling only zeros.
    """
    hi = min(hi, lo + 60.0 * lam_helper)

    def integrand(v):
        psi = np.sqrt(scale * np.maximum(bracket_fn(v), 0.0))
        return np.exp(-v / lam_helper) / lam_helper * one_minus_t_k1(psi)

    return quadrature(integrand, lo, hi, tol=tol)


def noma_event_probs(params, tol=DEFAULT_TOL) -> NomaEventProbs:
    """All seven NOMA event probabilities at the given parameter point."""
    validate(params, "isanc")
    t = noma_decode_thresholds(params)
    g = t.gamma_target
    p_N, p_F = params.p_N, params.p_F
    d_N = params.d_BN ** params.alpha * params.sigma2_N
    d_F = params.d_BF ** params.alpha * params.sigma2_F
    lam_BN, lam_BF = params.lambda_BN, params.lambda_BF
    sic_limited = params.power_ratio_k <= 2.0 ** params.rate_R

    p_ndf0 = -math.expm1(-t.t_ndf / lam_BN)
    p_fdf0 = -math.expm1(-t.t_fdf / lam_BF)
    if sic_limited:
        p_ndf1_ndn0 = 0.0
        p_fdf1_fdn0 = 0.0
    else:
        p_ndf1_ndn0 = _survival_diff(t.t_ndf, t.t_ndn, lam_BN)
        p_fdf1_fdn0 = _survival_diff(t.t_fdf, t.t_fdn, lam_BF)

    # N-assisted retry at F fails: integrate over x < t_fdf with N's full
    # decode (y >= C_N) integrated out into the psi*K1 kernel
    scale_F = (4.0 * params.d_BN ** params.alpha * params.d_NF ** params.alpha
               * params.sigma2_F
               / (lam_BN * params.lambda_NF * params.eta * params.total_power_PB))
    p_nhf0 = math.exp(-t.c_N / lam_BN) * _relay_failure_integral(
        0.0, t.t_fdf, lam_BF,
        lambda x: g - p_F * x / (p_N * x + d_F),
        scale_F, tol)

    # F-assisted retry at N fails; the direct branch keeps the cell-edge
    # interference because N never decoded that message
    scale_N = (4.0 * params.d_BF ** params.alpha * params.d_NF ** params.alpha
               * params.sigma2_N
               / (lam_BF * params.lambda_NF * params.eta * params.total_power_PB))
    p_fhn0_ndf0 = math.exp(-t.c_F / lam_BF) * _relay_failure_integral(
        0.0, t.t_ndf, lam_BN,
        lambda y: g - p_N * y / (p_F * y + d_N),
        scale_N, tol)

    # same retry but N had cancelled the cell-edge message (only possible
    # when k > 2^R opens the gap t_ndf <= y < t_ndn)
    if sic_limited:
        p_fhn0_ndf1 = 0.0
    else:
        p_fhn0_ndf1 = math.exp(-t.c_F / lam_BF) * _relay_failure_integral(
            t.t_ndf, t.t_ndn, lam_BN,
            lambda y: g - p_N * y / d_N,
            scale_N, tol)

    return NomaEventProbs(
        p_ndf0=p_ndf0, p_fdf0=p_fdf0,
        p_ndf1_ndn0=p_ndf1_ndn0, p_fdf1_fdn0=p_fdf1_fdn0,
        p_nhf0=p_nhf0, p_fhn0_ndf0=p_fhn0_ndf0, p_fhn0_ndf1=p_fhn0_ndf1,
    )


def ofdma_event_probs(params, tol=DEFAULT_TOL) -> OfdmaEventProbs:
    """All seven OFDMA event probabilities at the given parameter point.

    The cell-edge user's terms follow from the cell-center user's closed
    forms by swapping (d_BN, lam_BN, sigma_N, P_N, C_N, theta) with
    (d_BF, lam_BF, sigma_F, P_F, C_F, 1-theta); both sides are written out
    explicitly below.
    """
    validate(params, "isaoc")
    t = ofdma_decode_thresholds(params)
    theta = params.freq_fraction_theta
    p_N, p_F = params.ofdma_p_N, params.ofdma_p_F
    d_N = params.d_BN ** params.alpha * params.sigma2_N
    d_F = params.d_BF ** params.alpha * params.sigma2_F
    lam_BN, lam_BF = params.lambda_BN, params.lambda_BF

    p_ndn0 = -math.expm1(-t.t_ndn / lam_BN)
    p_fdf0 = -math.expm1(-t.t_fdf / lam_BF)
    p_ndf1_ndn1 = math.exp(-t.c_N / lam_BN)
    p_fdf1_fdn1 = math.exp(-t.c_F / lam_BF)
    p_fdf1_fdn0 = _survival_diff(t.t_fdf, t.t_fdn, lam_BF) if t.regime else 0.0

    scale_F = (4.0 * params.d_BN ** params.alpha * params.d_NF ** params.alpha
               * params.sigma2_F * theta
               / (lam_BN * params.lambda_NF * params.eta * params.total_power_PB))
    p_nhf0 = math.exp(-t.c_N / lam_BN) * _relay_failure_integral(
        0.0, t.t_fdf, lam_BF,
        lambda x: t.gamma_F - p_F * x / (d_F * theta),
        scale_F, tol)

    scale_N = (4.0 * params.d_BF ** params.alpha * params.d_NF ** params.alpha
               * params.sigma2_N * (1.0 - theta)
               / (lam_BF * params.lambda_NF * params.eta * params.total_power_PB))
    p_fhn0 = math.exp(-t.c_F / lam_BF) * _relay_failure_integral(
        0.0, t.t_ndn, lam_BN,
        lambda y: t.gamma_N - p_N * y / (d_N * (1.0 - theta)),
        scale_N, tol)

    return OfdmaEventProbs(
        p_ndn0=p_ndn0, p_fdf0=p_fdf0,
        p_ndf1_ndn1=p_ndf1_ndn1, p_fdf1_fdn1=p_fdf1_fdn1, p_fdf1_fdn0=p_fdf1_fdn0,
        p_nhf0=p_nhf0, p_fhn0=p_fhn0,
    )


def outage_csanc(params, tol=DEFAULT_TOL) -> OutageProbs:
    """csanc outage triple; the cell-center user has no relaying fallback.

    op_F factorizes as P{FDF=0}*P{NDN=0} + P{NHF=0,...} because the two
    direct-decode events depend on disjoint gains (x at F, y at N).
    """
    e = noma_event_probs(params, tol)
    op_n = e.p_ndn0
    op_f = e.p_fdf0 * op_n + e.p_nhf0
    return OutageProbs(op_N=op_n, op_F=op_f, sop=e.p_nhf0 + op_n)


def outage_isanc(params, tol=DEFAULT_TOL) -> OutageProbs:
    """isanc outage triple; identical op_F to csanc by construction."""
    e = noma_event_probs(params, tol)
    op_f = e.p_fdf0 * e.p_ndn0 + e.p_nhf0
    op_n = e.p_fdn0 * e.p_ndn0 + e.p_fhn0_ndf0 + e.p_fhn0_ndf1
    return OutageProbs(op_N=op_n, op_F=op_f, sop=op_n + e.p_nhf0)


def outage_isaoc(params, tol=DEFAULT_TOL) -> OutageProbs:
    """isaoc outage triple; the two users are peers, formulas are symmetric."""
    e = ofdma_event_probs(params, tol)
    op_f = e.p_nhf0 + e.p_fdf0 * (1.0 - e.p_ndf1_ndn1)
    op_n = e.p_fhn0 + e.p_ndn0 * (1.0 - e.p_fdf1_fdn1)
    sop = (e.p_nhf0 + e.p_fhn0
           + e.p_fdf0 * (1.0 - e.p_ndf1_ndn1)
           + e.p_ndn0 * e.p_fdf1_fdn0)
    return OutageProbs(op_N=op_n, op_F=op_f, sop=sop)
