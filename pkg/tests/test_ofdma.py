import numpy as np
import pytest

from swiptcoop.channel import ChannelRealization
from swiptcoop.ofdma import (
    decode_thresholds,
    evaluate_isaoc_trial,
    isaoc_batch,
    ofdma_thresholds,
)

from conftest import gain_batch


def test_thresholds_balanced_allocation(defaults):
    # theta = rho = 0.5, R = 1: both per-message requirements equal 0.03,
    # the strict inequality fails, and the cell-edge condition binds
    c_n, c_f, regime = ofdma_thresholds(defaults)
    assert regime is False
    assert c_n == pytest.approx(625e-5 * 0.5 * 3.0 / 50.0, rel=1e-12)   # 1.875e-4
    assert c_f == pytest.approx(1225e-5 * 0.5 * 3.0 / 50.0, rel=1e-12)  # 3.675e-4


def test_threshold_swap_symmetry(defaults):
    # swapping (theta, rho) -> (1-theta, 1-rho) swaps the two requirement
    # sides of the branch condition
    p1 = defaults.replace(freq_fraction_theta=0.3, power_fraction_rho=0.4)
    p2 = defaults.replace(freq_fraction_theta=0.7, power_fraction_rho=0.6)
    t1 = decode_thresholds(p1)
    t2 = decode_thresholds(p2)
    assert t1.gamma_F == pytest.approx(t2.gamma_N, rel=1e-12)
    assert t1.t_ndf == pytest.approx(t2.t_ndn, rel=1e-12)
    assert t1.t_fdf == pytest.approx(t2.t_fdn, rel=1e-12)


def test_huge_gains_no_outage(defaults):
    out = evaluate_isaoc_trial(defaults, ChannelRealization(50.0, 50.0, 50.0))
    assert out.ndf and out.ndn and out.fdf and out.fdn
    assert not out.outage_N and not out.outage_F
    assert out.beta_N > 0.0 and out.beta_F > 0.0


def test_relaying_rescues_n(defaults):
    # y misses both bands, F decodes both messages and forwards over z
    ch = ChannelRealization(x=1e-2, y=1e-5, z=10.0)
    out = evaluate_isaoc_trial(defaults, ch)
    assert not out.ndf and not out.ndn and out.fdf and out.fdn
    beta_expected = 1.0 - 3.675e-4 / 1e-2
    assert out.beta_F == pytest.approx(beta_expected, rel=1e-9)
    direct = 50.0 * 1e-5 / (625e-5 * 0.5)
    relay = beta_expected * 0.5 * 100.0 * 1e-2 * 10.0 / (1225.0 * 100.0 * 1e-5 * 0.5)
    assert direct + relay == pytest.approx(8.023265306122449, rel=1e-9)
    assert direct + relay >= 3.0  # per-band target 2^(R/(1-theta)) - 1
    assert out.fhn and not out.outage_N


def test_user_swap_symmetry(defaults):
    # swapping users (gains, geometry, noise, fading means) swaps the outages
    rng = np.random.default_rng(10)
    x, y, z = gain_batch(rng, 100_000)
    out = isaoc_batch(defaults, x, y, z)
    swapped = defaults.replace(
        d_BN=defaults.d_BF, d_BF=defaults.d_BN,
        lambda_BN=defaults.lambda_BF, lambda_BF=defaults.lambda_BN,
        sigma2_N=defaults.sigma2_F, sigma2_F=defaults.sigma2_N,
    )
    out_sw = isaoc_batch(swapped, y, x, z)
    assert np.array_equal(out["outage_N"], out_sw["outage_F"])
    assert np.array_equal(out["outage_F"], out_sw["outage_N"])


def test_decode_flags_match_per_band_snr(defaults):
    p = defaults.replace(freq_fraction_theta=0.35, power_fraction_rho=0.6)
    rng = np.random.default_rng(11)
    x, y, z = gain_batch(rng, 300_000)
    out = isaoc_batch(p, x, y, z)
    theta = p.freq_fraction_theta
    g_f = 2.0 ** (p.rate_R / theta) - 1.0
    g_n = 2.0 ** (p.rate_R / (1.0 - theta)) - 1.0
    d_n = p.d_BN ** p.alpha * p.sigma2_N
    d_f = p.d_BF ** p.alpha * p.sigma2_F
    tol = 1.0 - 1e-12
    assert (p.ofdma_p_F * y[out["ndf"]] / (d_n * theta) >= g_f * tol).all()
    assert (p.ofdma_p_N * y[out["ndn"]] / (d_n * (1 - theta)) >= g_n * tol).all()
    assert (p.ofdma_p_F * x[out["fdf"]] / (d_f * theta) >= g_f * tol).all()
    assert (p.ofdma_p_N * x[out["fdn"]] / (d_f * (1 - theta)) >= g_n * tol).all()


def test_event_taxonomy_invariants(defaults):
    # no SIC in OFDMA: ndf/ndn independent, but harvesting still needs both
    p = defaults.replace(freq_fraction_theta=0.4, power_fraction_rho=0.45)
    rng = np.random.default_rng(12)
    x, y, z = gain_batch(rng, 1_000_000)
    out = isaoc_batch(p, x, y, z)
    assert not ((out["beta_N"] > 0.0) & ~(out["ndf"] & out["ndn"])).any()
    assert not ((out["beta_F"] > 0.0) & ~(out["fdf"] & out["fdn"])).any()
    assert (out["beta_N"] >= 0.0).all() and (out["beta_N"] < 1.0).all()
    assert (out["beta_F"] >= 0.0).all() and (out["beta_F"] < 1.0).all()
    assert not (out["nhf"] & ~(~out["fdf"] & out["ndf"] & out["ndn"])).any()
    assert not (out["fhn"] & ~(~out["ndn"] & out["fdf"] & out["fdn"])).any()
    assert np.array_equal(out["outage_N"], ~(out["ndn"] | out["fhn"]))
    assert np.array_equal(out["outage_F"], ~(out["fdf"] | out["nhf"]))
    # mixed per-band outcomes do occur (no decode ordering)
    assert (out["ndn"] & ~out["ndf"]).any() or (out["ndf"] & ~out["ndn"]).any()


def test_more_relay_gain_never_hurts(defaults):
    rng = np.random.default_rng(13)
    x, y, z = gain_batch(rng, 200_000)
    low = isaoc_batch(defaults, x, y, z)
    high = isaoc_batch(defaults, x, y, 4.0 * z)
    assert not (low["nhf"] & ~high["nhf"]).any()
    assert not (low["fhn"] & ~high["fhn"]).any()
