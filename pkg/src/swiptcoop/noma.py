"""Per-trial decision logic for the NOMA protocols (csanc, isanc).

Both protocols share the IT phase: the BS superposes the two messages, user N
SIC-decodes (cell-edge message first, then its own), user F decodes only the
cell-edge message in csanc and additionally SIC-decodes the cell-center
message in isanc.  A user that decodes everything it must keeps only the power
needed for marginal decoding and diverts the surplus fraction beta to energy
harvesting; in the IR phase the harvested energy funds decode-and-forward
relaying of the other user's message, which the receiver MRC-combines with its
direct observation.

Decode feasibility is always evaluated at beta = 0 (all received power to
information decoding); the gain thresholds below are exactly the marginal
decoding conditions, so the event set matches the outage taxonomy the
closed-form analysis integrates over.  Success comparisons use >= (decoding
succeeds exactly at the SINR target).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "NomaThresholds",
    "TrialOutcome",
    "csanc_batch",
    "decode_thresholds",
    "eh_factor",
    "evaluate_csanc_trial",
    "evaluate_isanc_trial",
    "isanc_batch",
    "noma_thresholds",
]


@dataclass(frozen=True)
class TrialOutcome:
    """Decoded-event flags and outage verdicts for one trial.

    ndf/ndn: N decoded the cell-edge / its own message in the IT phase.
    fdf/fdn: same at F (fdn is always False in csanc, where F runs no SIC).
    nhf/fhn: the relayed retry at F / at N succeeded in the IR phase.
    Events that a protocol never attempts are recorded False.
    """

    ndf: bool
    ndn: bool
    fdf: bool
    fdn: bool
    nhf: bool
    fhn: bool
    outage_N: bool
    outage_F: bool
    beta_N: float
    beta_F: float


@dataclass(frozen=True)
class NomaThresholds:
    """Channel-gain thresholds implied by the SINR targets at beta = 0.

    t_* are the per-message marginal-decoding gains; c_N/c_F are the
    full-decode thresholds max(t_ndf, t_ndn) and max(t_fdf, t_fdn) that gate
    the energy-harvesting factor.
    """

    gamma_target: float
    t_ndf: float
    t_ndn: float
    t_fdf: float
    t_fdn: float
    c_N: float
    c_F: float


def decode_thresholds(params) -> NomaThresholds:
    g = 2.0 ** params.rate_R - 1.0
    p_N = params.p_N
    p_F = params.p_F
    head = p_F - p_N * g  # > 0 by validation
    d_N = params.d_BN ** params.alpha * params.sigma2_N
    d_F = params.d_BF ** params.alpha * params.sigma2_F
    return NomaThresholds(
        gamma_target=g,
        t_ndf=d_N * g / head,
        t_ndn=d_N * g / p_N,
        t_fdf=d_F * g / head,
        t_fdn=d_F * g / p_N,
        c_N=max(d_N * g / head, d_N * g / p_N),
        c_F=max(d_F * g / head, d_F * g / p_N),
    )


def noma_thresholds(params):
    """Full-decode gain thresholds (C_N, C_F) for the two users.

    Which per-message condition binds depends on the allocation ratio: for
    k > 2^R the own-message condition dominates (C = d^alpha*sigma^2*(2^R-1)/P_N),
    otherwise the cell-edge-message condition does
    (C = d^alpha*sigma^2*(2^R-1)/(P_F - P_N*(2^R-1))).
    """
    t = decode_thresholds(params)
    return t.c_N, t.c_F


def eh_factor(gain, threshold):
    """Maximum power-splitting fraction that still decodes: max(1 - C/gain, 0).

    Always < 1 for finite gain; 0 whenever gain <= threshold (including
    gain = 0, handled without dividing).
    """
    if threshold <= 0.0:
        raise ValueError(f"threshold must be > 0, got {threshold!r}")
    if gain < 0.0:
        raise ValueError(f"gain must be >= 0, got {gain!r}")
    if gain <= threshold:
        return 0.0
    return 1.0 - threshold / gain


def csanc_batch(params, x, y, z):
    """Vectorized csanc trials; returns a dict of event/outage/beta arrays.

    Only user N harvests and relays: if F misses its message while N decoded
    both, N forwards the cell-edge message and F retries with MRC.
    """
    t = decode_thresholds(params)
    g = t.gamma_target
    p_N, p_F = params.p_N, params.p_F
    d_F = params.d_BF ** params.alpha * params.sigma2_F

    fdf = x >= t.t_fdf
    ndf = y >= t.t_ndf
    ndn = ndf & (y >= t.t_ndn)

    beta_N = np.where(ndn, np.maximum(1.0 - t.c_N / np.maximum(y, t.c_N), 0.0), 0.0)

    # IR phase: MRC of F's direct SINR with the harvested-relay branch
    attempt = ~fdf & ndn
    direct_F = p_F * x / (p_N * x + d_F)
    relay = (beta_N * params.eta * params.total_power_PB * y * z
             / (params.d_BN ** params.alpha * params.d_NF ** params.alpha * params.sigma2_F))
    nhf = attempt & (direct_F + relay >= g)

    false = np.zeros_like(fdf)
    return {
        "ndf": ndf, "ndn": ndn, "fdf": fdf, "fdn": false, "nhf": nhf, "fhn": false,
        "outage_N": ~ndn, "outage_F": ~(fdf | nhf),
        "beta_N": beta_N, "beta_F": np.zeros_like(beta_N),
    }


def isanc_batch(params, x, y, z):
    """Vectorized isanc trials.

    F's side of csanc is preserved untouched; in addition F SIC-decodes the
    cell-center message and, when N failed its own message while F decoded
    both, forwards it.  N's MRC direct branch depends on whether N had
    cancelled the cell-edge message (interference-free) or not.
    """
    out = csanc_batch(params, x, y, z)
    t = decode_thresholds(params)
    g = t.gamma_target
    p_N, p_F = params.p_N, params.p_F
    d_N = params.d_BN ** params.alpha * params.sigma2_N

    ndf, ndn, fdf = out["ndf"], out["ndn"], out["fdf"]
    fdn = fdf & (x >= t.t_fdn)
    beta_F = np.where(fdn, np.maximum(1.0 - t.c_F / np.maximum(x, t.c_F), 0.0), 0.0)

    attempt = ~ndn & fdn
    direct_N = np.where(ndf, p_N * y / d_N, p_N * y / (p_F * y + d_N))
    relay = (beta_F * params.eta * params.total_power_PB * x * z
             / (params.d_BF ** params.alpha * params.d_NF ** params.alpha * params.sigma2_N))
    fhn = attempt & (direct_N + relay >= g)

    out.update(fdn=fdn, fhn=fhn, beta_F=beta_F, outage_N=~(ndn | fhn))
    return out


def _single(batch_fn, params, ch) -> TrialOutcome:
    arrays = batch_fn(
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


def evaluate_csanc_trial(params, ch) -> TrialOutcome:
    """Classify one csanc trial (thin wrapper over the batch kernel)."""
    return _single(csanc_batch, params, ch)


def evaluate_isanc_trial(params, ch) -> TrialOutcome:
    """Classify one isanc trial (thin wrapper over the batch kernel)."""
    return _single(isanc_batch, params, ch)
