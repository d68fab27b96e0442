"""Monte Carlo driver: runs trials in blocks, aggregates outage counts.

Counts are a pure function of (protocol, params, trials, seed): trials map to
fixed channel substream blocks (see :mod:`swiptcoop.channel`), blocks are
evaluated vectorized, and integer counts are summed, so a run with one worker
and a run with many workers are identical to the last bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import channel
from .noma import csanc_batch, isanc_batch
from .ofdma import isaoc_batch
from .params import PROTOCOLS, validate

__all__ = [
    "NOMA_EVENT_KEYS",
    "OFDMA_EVENT_KEYS",
    "OutageEstimate",
    "estimate",
    "event_frequencies",
]

_BATCH_FNS = {"csanc": csanc_batch, "isanc": isanc_batch, "isaoc": isaoc_batch}

# composite events countable by event_frequencies; names match the fields of
# the analytic event-probability types (without the p_ prefix)
NOMA_EVENT_KEYS = (
    "ndf0", "fdf0", "ndf1_ndn0", "fdf1_fdn0", "nhf0", "fhn0_ndf0", "fhn0_ndf1",
    "outage_N", "outage_F", "outage_sys",
)
OFDMA_EVENT_KEYS = (
    "ndn0", "fdf0", "ndf1_ndn1", "fdf1_fdn1", "fdf1_fdn0", "nhf0", "fhn0",
    "outage_N", "outage_F", "outage_sys",
)

# 95% two-sided normal quantile for the binomial CI half-widths
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class OutageEstimate:
    """Outage counts and estimates for one run.

    The system outage counts trials where either user is in outage, so
    max(failures_N, failures_F) <= failures_sys <= failures_N + failures_F
    always holds.  CI half-widths use the normal approximation, which is only
    trustworthy once the corresponding failure count reaches about 100; the
    CLI warns below that.
    """

    protocol: str
    trials: int
    failures_N: int
    failures_F: int
    failures_sys: int
    seed: int

    def __post_init__(self):
        if not (max(self.failures_N, self.failures_F) <= self.failures_sys
                <= self.failures_N + self.failures_F <= 2 * self.trials):
            raise AssertionError(
                f"inconsistent outage counts: N={self.failures_N} "
                f"F={self.failures_F} sys={self.failures_sys} trials={self.trials}")

    @property
    def op_N(self):
        return self.failures_N / self.trials

    @property
    def op_F(self):
        return self.failures_F / self.trials

    @property
    def sop(self):
        return self.failures_sys / self.trials

    def _half_width(self, p):
        return _Z95 * math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def ci_half_width_N(self):
        return self._half_width(self.op_N)

    @property
    def ci_half_width_F(self):
        return self._half_width(self.op_F)

    @property
    def ci_half_width_sys(self):
        return self._half_width(self.sop)

    @property
    def noise_dominated(self):
        """True when any failure count is below the CI-trustworthiness floor."""
        return min(self.failures_N, self.failures_F, self.failures_sys) < 100


def _blocks(trials):
    full, rem = divmod(trials, channel.BLOCK_SIZE)
    for b in range(full):
        yield b, channel.BLOCK_SIZE
    if rem:
        yield full, rem


def _block_counts(args):
    protocol, params, seed, block, count = args
    x, y, z = channel.sample_block(seed, block, count, params)
    out = _BATCH_FNS[protocol](params, x, y, z)
    return (
        int(out["outage_N"].sum()),
        int(out["outage_F"].sum()),
        int((out["outage_N"] | out["outage_F"]).sum()),
    )


def _event_masks(protocol, out):
    ndf, ndn = out["ndf"], out["ndn"]
    fdf, fdn = out["fdf"], out["fdn"]
    nhf, fhn = out["nhf"], out["fhn"]
    common = {
        "fdf0": ~fdf,
        "nhf0": ~fdf & ndf & ndn & ~nhf,
        "outage_N": out["outage_N"],
        "outage_F": out["outage_F"],
        "outage_sys": out["outage_N"] | out["outage_F"],
    }
    if protocol == "isaoc":
        common.update({
            "ndn0": ~ndn,
            "ndf1_ndn1": ndf & ndn,
            "fdf1_fdn1": fdf & fdn,
            "fdf1_fdn0": fdf & ~fdn,
            "fhn0": ~ndn & fdf & fdn & ~fhn,
        })
        return common, OFDMA_EVENT_KEYS
    common.update({
        "ndf0": ~ndf,
        "ndf1_ndn0": ndf & ~ndn,
        "fdf1_fdn0": fdf & ~fdn,
        "fhn0_ndf0": ~ndf & fdf & fdn & ~fhn,
        "fhn0_ndf1": ndf & ~ndn & fdf & fdn & ~fhn,
    })
    return common, NOMA_EVENT_KEYS


def _block_events(args):
    protocol, params, seed, block, count = args
    x, y, z = channel.sample_block(seed, block, count, params)
    out = _BATCH_FNS[protocol](params, x, y, z)
    masks, keys = _event_masks(protocol, out)
    return tuple(int(masks[key].sum()) for key in keys)


def _run(task_fn, protocol, params, trials, seed, workers, width):
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}, expected one of {PROTOCOLS}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    validate(params, protocol)
    tasks = [(protocol, params, seed, block, count) for block, count in _blocks(trials)]
    totals = [0] * width
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(task_fn, tasks, chunksize=max(1, len(tasks) // workers))
            for result in results:
                for i, c in enumerate(result):
                    totals[i] += c
    else:
        for task in tasks:
            for i, c in enumerate(task_fn(task)):
                totals[i] += c
    return totals


def estimate(protocol, params, trials, seed, workers=1) -> OutageEstimate:
    """Estimate per-user and system outage probabilities by Monte Carlo."""
    failures_n, failures_f, failures_sys = _run(
        _block_counts, protocol, params, trials, seed, workers, 3)
    return OutageEstimate(
        protocol=protocol,
        trials=trials,
        failures_N=failures_n,
        failures_F=failures_f,
        failures_sys=failures_sys,
        seed=seed,
    )


def event_frequencies(protocol, params, trials, seed, workers=1) -> dict:
    """Counts of the named composite decode/relay events over ``trials``.

    The keys mirror the fields of the analytic event-probability types, so
    this is the empirical side of the dual route against the closed forms
    (count/trials vs the corresponding integral).
    """
    keys = OFDMA_EVENT_KEYS if protocol == "isaoc" else NOMA_EVENT_KEYS
    totals = _run(_block_events, protocol, params, trials, seed, workers, len(keys))
    return dict(zip(keys, totals))
