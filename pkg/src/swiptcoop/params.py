"""Scenario constants, unit conversion, validation and derived power splits.

All powers are linear milliwatts internally; dBm is accepted only at the
config-file boundary.  NOMA protocols (csanc, isanc) split the total power
through the allocation ratio k = P_F/P_N, the OFDMA protocol (isaoc) through
the fraction rho = P_F/P_B, so both knobs are stored side by side.
"""

from __future__ import annotations

import configparser
import hashlib
import math
from dataclasses import dataclass, replace

__all__ = [
    "PROTOCOLS",
    "SimulationSettings",
    "SystemParams",
    "ValidationError",
    "config_digest",
    "config_digest_bytes",
    "dbm_to_mw",
    "load_config",
    "load_config_string",
    "mw_to_dbm",
    "validate",
]

PROTOCOLS = ("csanc", "isanc", "isaoc")


class ValidationError(ValueError):
    """Parameter set violates an invariant; message names field and bound."""


def dbm_to_mw(p):
    """Convert a power from dBm to linear milliwatts."""
    if not math.isfinite(p):
        raise ValidationError(f"power in dBm must be finite, got {p!r}")
    return 10.0 ** (p / 10.0)


def mw_to_dbm(p):
    """Convert a power from linear milliwatts to dBm."""
    if not (math.isfinite(p) and p > 0.0):
        raise ValidationError(f"power in mW must be finite and > 0, got {p!r}")
    return 10.0 * math.log10(p)


@dataclass(frozen=True)
class SystemParams:
    """One scenario: rate target, powers, allocation knobs, geometry, fading.

    Field naming follows the usual two-user downlink convention: N is the
    cell-center user, F the cell-edge user, B the base station.
    """

    rate_R: float = 1.0                 # spectral efficiency target, bit/s/Hz
    total_power_PB: float = 100.0       # BS transmit power, linear mW
    power_ratio_k: float = 7.0 / 3.0    # NOMA allocation ratio P_F/P_N
    power_fraction_rho: float = 0.5     # OFDMA power fraction to user F
    freq_fraction_theta: float = 0.5    # OFDMA frequency fraction to user F
    eta: float = 0.5                    # energy conversion efficiency
    alpha: float = 2.0                  # path-loss exponent
    d_BN: float = 25.0                  # distances, meters
    d_BF: float = 35.0
    d_NF: float = 10.0
    lambda_BN: float = 1.0              # means of the exponential squared gains
    lambda_BF: float = 1.0
    lambda_NF: float = 1.0
    sigma2_N: float = 1e-5              # noise variances, linear mW
    sigma2_F: float = 1e-5

    # NOMA split: P_N from the ratio, P_F as the exact complement
    @property
    def p_N(self):
        return self.total_power_PB / (1.0 + self.power_ratio_k)

    @property
    def p_F(self):
        return self.total_power_PB - self.p_N

    # OFDMA split: P_F from the fraction, P_N as the exact complement
    @property
    def ofdma_p_F(self):
        return self.power_fraction_rho * self.total_power_PB

    @property
    def ofdma_p_N(self):
        return self.total_power_PB - self.ofdma_p_F

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class SimulationSettings:
    """Monte Carlo controls read from the [simulation] config section."""

    trials: int = 1_000_000
    seed: int = 2024
    workers: int = 1


def _positive(errors, name, value):
    if not (math.isfinite(value) and value > 0.0):
        errors.append(f"{name} must be > 0 and finite, got {value!r}")


def _fraction(errors, name, value):
    if not (math.isfinite(value) and 0.0 < value < 1.0):
        errors.append(f"{name} must lie in (0, 1), got {value!r}")


def validate(params: SystemParams, protocol: str) -> SystemParams:
    """Check every invariant that applies to ``protocol``; return the params.

    The NOMA power-allocation constraint k > 2^R - 1 (equivalently
    P_F - P_N*(2^R - 1) > 0, without which the cell-edge message can never be
    decoded) applies only to csanc/isanc; the theta/rho range constraints only
    to isaoc.  Raises :class:`ValidationError` naming each violated field.
    """
    if protocol not in PROTOCOLS:
        raise ValidationError(f"unknown protocol {protocol!r}, expected one of {PROTOCOLS}")
    errors = []
    _positive(errors, "rate_R", params.rate_R)
    _positive(errors, "total_power_PB", params.total_power_PB)
    for name in ("d_BN", "d_BF", "d_NF"):
        _positive(errors, name, getattr(params, name))
    for name in ("lambda_BN", "lambda_BF", "lambda_NF"):
        _positive(errors, name, getattr(params, name))
    for name in ("sigma2_N", "sigma2_F"):
        _positive(errors, name, getattr(params, name))
    if not (math.isfinite(params.eta) and 0.0 < params.eta <= 1.0):
        errors.append(f"eta must lie in (0, 1], got {params.eta!r}")
    if not (math.isfinite(params.alpha) and params.alpha >= 0.0):
        errors.append(f"alpha must be >= 0, got {params.alpha!r}")

    if protocol in ("csanc", "isanc"):
        bound = 2.0 ** params.rate_R - 1.0
        if not (math.isfinite(params.power_ratio_k) and params.power_ratio_k > bound):
            errors.append(
                f"power_ratio_k must exceed 2^R - 1 = {bound:g} for NOMA, "
                f"got {params.power_ratio_k!r}"
            )
    if protocol == "isaoc":
        _fraction(errors, "freq_fraction_theta", params.freq_fraction_theta)
        _fraction(errors, "power_fraction_rho", params.power_fraction_rho)

    if errors:
        raise ValidationError("; ".join(errors))
    return params


_SYSTEM_FLOATS = {
    "rate": "rate_R",
    "eta": "eta",
    "alpha": "alpha",
    "d_BN": "d_BN",
    "d_BF": "d_BF",
    "d_NF": "d_NF",
    "lambda_BN": "lambda_BN",
    "lambda_BF": "lambda_BF",
    "lambda_NF": "lambda_NF",
}


def load_config(path) -> tuple[SystemParams, SimulationSettings]:
    """Parse a key = value config file; powers are given in dBm there.

    Sections: [system] for shared constants, [noma] for the power ratio,
    [ofdma] for the power/frequency fractions, [simulation] for trial count,
    seed and worker count.  Every key is optional and falls back to the
    defaults above.
    """
    try:
        with open(path, "r") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"config file not found or unreadable: {path}") from exc
    return load_config_string(text)


def load_config_string(text) -> tuple[SystemParams, SimulationSettings]:
    """Parse config content given as a string; see :func:`load_config`."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ValidationError(f"malformed config: {exc}") from exc

    kwargs = {}
    try:
        if cp.has_section("system"):
            sec = cp["system"]
            for key, field in _SYSTEM_FLOATS.items():
                if key in sec:
                    kwargs[field] = sec.getfloat(key)
            if "total_power" in sec:
                kwargs["total_power_PB"] = dbm_to_mw(sec.getfloat("total_power"))
            if "noise_N" in sec:
                kwargs["sigma2_N"] = dbm_to_mw(sec.getfloat("noise_N"))
            if "noise_F" in sec:
                kwargs["sigma2_F"] = dbm_to_mw(sec.getfloat("noise_F"))
        if cp.has_section("noma") and "power_ratio" in cp["noma"]:
            kwargs["power_ratio_k"] = cp["noma"].getfloat("power_ratio")
        if cp.has_section("ofdma"):
            sec = cp["ofdma"]
            if "power_fraction" in sec:
                kwargs["power_fraction_rho"] = sec.getfloat("power_fraction")
            if "freq_fraction" in sec:
                kwargs["freq_fraction_theta"] = sec.getfloat("freq_fraction")
        sim = SimulationSettings()
        if cp.has_section("simulation"):
            sec = cp["simulation"]
            sim = SimulationSettings(
                trials=sec.getint("trials", fallback=sim.trials),
                seed=sec.getint("seed", fallback=sim.seed),
                workers=sec.getint("workers", fallback=sim.workers),
            )
    except ValueError as exc:
        raise ValidationError(f"malformed config value: {exc}") from exc
    return SystemParams(**kwargs), sim


def config_digest_bytes(data: bytes) -> str:
    """Short sha256 of raw config bytes, recorded in every CSV header."""
    return hashlib.sha256(data).hexdigest()[:12]


def config_digest(path) -> str:
    """Short sha256 of a config file's bytes."""
    with open(path, "rb") as fh:
        return config_digest_bytes(fh.read())
