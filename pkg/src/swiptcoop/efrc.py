r"""Error-free relaying channel (EFRC) limit: SOP formulas and optima.

With a perfect inter-user pipe, a user is in outage only if it fails its own
direct decode *and* the other user failed to decode everything it would need
to forward.  For isanc the union of the two users' outages collapses to
{NDN=0, FDN=0} (failing the first SIC stage implies failing the second), so

    SOP = P{NDN=0} * P{FDN=0} = (1 - e^(-C_N/lam_BN)) * (1 - e^(-C_F/lam_BF)),

a product of the two full-decode failure probabilities; the independence is
exact because the events live on disjoint gains.  The isaoc counterpart is the
same product with the OFDMA thresholds.  Minimizing over the allocation knobs
gives k = 2^R for isanc and (rho, theta) = (0.5, 0.5) for isaoc, both landing
on the same optimum

    (1 - exp(-d_BN^a*sigma_N^2*(2^(2R)-1)/(lam_BN*P_B)))
  * (1 - exp(-d_BF^a*sigma_F^2*(2^(2R)-1)/(lam_BF*P_B))).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .noma import decode_thresholds as noma_decode_thresholds
from .ofdma import decode_thresholds as ofdma_decode_thresholds
from .params import validate

__all__ = [
    "EfrcOptimum",
    "balanced_power_fraction",
    "efrc_optimal_isanc",
    "efrc_optimal_isaoc",
    "efrc_sop_csanc",
    "efrc_sop_isanc",
    "efrc_sop_isaoc",
    "rate_balance_f",
]


def efrc_sop_isanc(params) -> float:
    """isanc SOP under error-free relaying: P{NDN=0} * P{FDN=0}."""
    validate(params, "isanc")
    t = noma_decode_thresholds(params)
    return (-math.expm1(-t.c_N / params.lambda_BN)) * (-math.expm1(-t.c_F / params.lambda_BF))


def efrc_sop_csanc(params) -> float:
    """csanc SOP under error-free relaying.

    Only N relays, so F's outage {FDF=0, NDN=0} is contained in N's {NDN=0}
    and the system outage is just P{NDN=0}.
    """
    validate(params, "csanc")
    t = noma_decode_thresholds(params)
    return -math.expm1(-t.c_N / params.lambda_BN)


def efrc_sop_isaoc(params) -> float:
    """isaoc SOP under error-free relaying: same product with OFDMA thresholds."""
    validate(params, "isaoc")
    t = ofdma_decode_thresholds(params)
    return (-math.expm1(-t.c_N / params.lambda_BN)) * (-math.expm1(-t.c_F / params.lambda_BF))


def rate_balance_f(theta, rate):
    """f(theta) = theta*(2^(R/theta)-1) + (1-theta)*(2^(R/(1-theta))-1).

    The balanced-allocation isaoc SOP exponentials carry f(theta)/P_B; f is
    symmetric about 0.5 and strictly convex there, which is what pins the
    optimal frequency split.
    """
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0,1), got {theta!r}")
    return (theta * (2.0 ** (rate / theta) - 1.0)
            + (1.0 - theta) * (2.0 ** (rate / (1.0 - theta)) - 1.0))


def balanced_power_fraction(theta, rate):
    """rho that equalizes the two messages' power requirements at this theta."""
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0,1), got {theta!r}")
    q = (theta * (2.0 ** (rate / theta) - 1.0)
         / ((1.0 - theta) * (2.0 ** (rate / (1.0 - theta)) - 1.0)))
    return q / (1.0 + q)


def _optimal_sop(params) -> float:
    full_rate_gain = 2.0 ** (2.0 * params.rate_R) - 1.0
    expo_n = (params.d_BN ** params.alpha * params.sigma2_N * full_rate_gain
              / (params.lambda_BN * params.total_power_PB))
    expo_f = (params.d_BF ** params.alpha * params.sigma2_F * full_rate_gain
              / (params.lambda_BF * params.total_power_PB))
    return (-math.expm1(-expo_n)) * (-math.expm1(-expo_f))


@dataclass(frozen=True)
class EfrcOptimum:
    """Optimal allocation under EFRC and the SOP it attains."""

    power_ratio_k: float | None
    power_fraction_rho: float | None
    freq_fraction_theta: float | None
    sop: float


def efrc_optimal_isanc(params) -> EfrcOptimum:
    """k = 2^R minimizes the EFRC SOP (decreasing below, increasing above)."""
    k_opt = 2.0 ** params.rate_R
    return EfrcOptimum(power_ratio_k=k_opt, power_fraction_rho=None,
                       freq_fraction_theta=None, sop=_optimal_sop(params))


def efrc_optimal_isaoc(params) -> EfrcOptimum:
    """theta = 0.5 with the balanced power split rho = 0.5.

    Under the balance condition the SOP exponentials carry f(theta)/P_B and
    f is minimized at 0.5, where f = 2^(2R) - 1: the same optimum as isanc.
    """
    return EfrcOptimum(power_ratio_k=None, power_fraction_rho=0.5,
                       freq_fraction_theta=0.5, sop=_optimal_sop(params))
