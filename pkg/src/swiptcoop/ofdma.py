"""Per-trial decision logic for the OFDMA protocol (isaoc).

The two messages travel in disjoint frequency fractions (theta to the
cell-edge user F, 1-theta to the cell-center user N), so there is no
co-channel interference and no decoding order: each user checks its two
messages independently against per-band rate targets 2^(R/theta)-1 and
2^(R/(1-theta))-1.  Harvest-and-relay mirrors the NOMA protocols, gated on a
user decoding both messages.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .noma import TrialOutcome

__all__ = [
    "OfdmaThresholds",
    "decode_thresholds",
    "evaluate_isaoc_trial",
    "isaoc_batch",
    "ofdma_thresholds",
]


@dataclass(frozen=True)
class OfdmaThresholds:
    """Per-band gain thresholds and the binding-constraint regime.

    ``regime`` is True when the cell-center message's power requirement
    (1-theta)/P_N*(2^(R/(1-theta))-1) strictly exceeds the cell-edge message's
    theta/P_F*(2^(R/theta))-1), i.e. when the own-message condition binds the
    full-decode thresholds c_N/c_F.
    """

    gamma_F: float        # SNR target for the cell-edge message's band
    gamma_N: float        # SNR target for the cell-center message's band
    t_ndf: float
    t_ndn: float
    t_fdf: float
    t_fdn: float
    c_N: float
    c_F: float
    regime: bool


def decode_thresholds(params) -> OfdmaThresholds:
    theta = params.freq_fraction_theta
    g_F = 2.0 ** (params.rate_R / theta) - 1.0
    g_N = 2.0 ** (params.rate_R / (1.0 - theta)) - 1.0
    req_N = (1.0 - theta) * g_N / params.ofdma_p_N   # gain per unit d^alpha*sigma^2
    req_F = theta * g_F / params.ofdma_p_F
    d_N = params.d_BN ** params.alpha * params.sigma2_N
    d_F = params.d_BF ** params.alpha * params.sigma2_F
    return OfdmaThresholds(
        gamma_F=g_F,
        gamma_N=g_N,
        t_ndf=d_N * req_F,
        t_ndn=d_N * req_N,
        t_fdf=d_F * req_F,
        t_fdn=d_F * req_N,
        c_N=d_N * max(req_N, req_F),
        c_F=d_F * max(req_N, req_F),
        regime=req_N > req_F,
    )


def ofdma_thresholds(params):
    """Full-decode thresholds (C_N, C_F) and the binding regime flag."""
    t = decode_thresholds(params)
    return t.c_N, t.c_F, t.regime


def isaoc_batch(params, x, y, z):
    """Vectorized isaoc trials; returns a dict of event/outage/beta arrays."""
    t = decode_thresholds(params)
    theta = params.freq_fraction_theta
    p_N, p_F = params.ofdma_p_N, params.ofdma_p_F
    d_N = params.d_BN ** params.alpha * params.sigma2_N
    d_F = params.d_BF ** params.alpha * params.sigma2_F
    pathloss_NF = params.d_BN ** params.alpha * params.d_NF ** params.alpha
    pathloss_FN = params.d_BF ** params.alpha * params.d_NF ** params.alpha

    # independent per-band decode checks at beta = 0
    ndf = y >= t.t_ndf
    ndn = y >= t.t_ndn
    fdf = x >= t.t_fdf
    fdn = x >= t.t_fdn

    full_N = ndf & ndn
    full_F = fdf & fdn
    beta_N = np.where(full_N, np.maximum(1.0 - t.c_N / np.maximum(y, t.c_N), 0.0), 0.0)
    beta_F = np.where(full_F, np.maximum(1.0 - t.c_F / np.maximum(x, t.c_F), 0.0), 0.0)

    # N relays the cell-edge message inside F's band
    nhf_attempt = ~fdf & full_N
    gamma_nhf = (p_F * x / (d_F * theta)
                 + beta_N * params.eta * params.total_power_PB * y * z
                 / (pathloss_NF * params.sigma2_F * theta))
    nhf = nhf_attempt & (gamma_nhf >= t.gamma_F)

    # F relays the cell-center message inside N's band
    fhn_attempt = ~ndn & full_F
    gamma_fhn = (p_N * y / (d_N * (1.0 - theta))
                 + beta_F * params.eta * params.total_power_PB * x * z
                 / (pathloss_FN * params.sigma2_N * (1.0 - theta)))
    fhn = fhn_attempt & (gamma_fhn >= t.gamma_N)

    return {
        "ndf": ndf, "ndn": ndn, "fdf": fdf, "fdn": fdn, "nhf": nhf, "fhn": fhn,
        "outage_N": ~(ndn | fhn), "outage_F": ~(fdf | nhf),
        "beta_N": beta_N, "beta_F": beta_F,
    }


def evaluate_isaoc_trial(params, ch) -> TrialOutcome:
    """Classify one isaoc trial (thin wrapper over the batch kernel)."""
    arrays = isaoc_batch(
        params,
        np.asarray([ch.x], dtype=float),
        np.asarray([ch.y], dtype=float),
        np.asarray([ch.z], dtype=float),
    )
    return TrialOutcome(
        ndf=bool(arrays["ndf"][0]), ndn=bool(arrays["ndn"][0]),
        fdf=bool(arrays["fdf"][0]), fdn=bool(arrays["fdn"][0]),
        nhf=bool(arrays["nhf"][0]), fhn=bool(arrays["fhn"][0]),
        outage_N=bool(arrays["outage_N"][0]), outage_F=bool(arrays["outage_F"][0]),
        beta_N=float(arrays["beta_N"][0]), beta_F=float(arrays["beta_F"][0]),
    )
