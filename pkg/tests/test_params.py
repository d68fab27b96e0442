import math

import pytest
from hypothesis import given, strategies as st

from swiptcoop.params import (
    SimulationSettings,
    SystemParams,
    ValidationError,
    dbm_to_mw,
    load_config_string,
    mw_to_dbm,
    validate,
)


def test_dbm_to_mw_reference_points():
    assert dbm_to_mw(0.0) == 1.0
    assert dbm_to_mw(20.0) == 100.0
    assert dbm_to_mw(-50.0) == pytest.approx(1e-5, rel=1e-12)


def test_dbm_to_mw_rejects_nonfinite():
    for bad in (float("nan"), float("inf"), -float("inf")):
        with pytest.raises(ValidationError):
            dbm_to_mw(bad)


@given(st.floats(min_value=-120.0, max_value=60.0))
def test_dbm_round_trip(p):
    assert mw_to_dbm(dbm_to_mw(p)) == pytest.approx(p, rel=1e-12, abs=1e-12)


def test_power_split_sums_exactly(defaults):
    assert defaults.p_N + defaults.p_F == defaults.total_power_PB
    assert defaults.ofdma_p_N + defaults.ofdma_p_F == defaults.total_power_PB
    assert defaults.p_F / defaults.p_N == pytest.approx(7.0 / 3.0, rel=1e-12)


def test_validate_accepts_paper_allocation(defaults):
    # k = 7/3 > 2^1 - 1
    assert validate(defaults, "csanc") is defaults
    assert validate(defaults, "isanc") is defaults


def test_validate_rejects_k_at_noma_bound(defaults):
    bad = defaults.replace(power_ratio_k=1.0)  # k == 2^R - 1 for R = 1
    with pytest.raises(ValidationError, match="power_ratio_k"):
        validate(bad, "csanc")


def test_k_constraint_not_applied_to_ofdma(defaults):
    # the NOMA ratio is irrelevant for isaoc
    ofdma_only = defaults.replace(power_ratio_k=0.5)
    assert validate(ofdma_only, "isaoc") is ofdma_only
    with pytest.raises(ValidationError):
        validate(ofdma_only, "csanc")


def test_validate_rejects_bad_fractions(defaults):
    with pytest.raises(ValidationError, match="freq_fraction_theta"):
        validate(defaults.replace(freq_fraction_theta=1.0), "isaoc")
    with pytest.raises(ValidationError, match="power_fraction_rho"):
        validate(defaults.replace(power_fraction_rho=0.0), "isaoc")


def test_validate_reports_field_names(defaults):
    bad = defaults.replace(d_BN=-1.0, eta=2.0)
    with pytest.raises(ValidationError) as err:
        validate(bad, "csanc")
    assert "d_BN" in str(err.value)
    assert "eta" in str(err.value)


def test_unknown_protocol_rejected(defaults):
    with pytest.raises(ValidationError):
        validate(defaults, "tdma")


@given(
    rate=st.floats(min_value=0.1, max_value=4.0),
    margin=st.floats(min_value=1e-6, max_value=50.0),
)
def test_accepted_noma_params_have_positive_power_headroom(rate, margin):
    # k > 2^R - 1  <=>  P_F - P_N*(2^R - 1) > 0
    k = (2.0 ** rate - 1.0) + margin
    p = SystemParams(rate_R=rate, power_ratio_k=k)
    validate(p, "isanc")
    assert p.p_F - p.p_N * (2.0 ** rate - 1.0) > 0.0


CONFIG = """
[system]
rate = 1.0
total_power = 20.0
noise_N = -50.0
noise_F = -50.0
eta = 0.5
alpha = 2.0
d_BN = 25.0
d_BF = 35.0
d_NF = 10.0

[noma]
power_ratio = 2.3333333333333335

[ofdma]
power_fraction = 0.5
freq_fraction = 0.5

[simulation]
trials = 250000
seed = 99
workers = 2
"""


def test_load_config_string_converts_dbm():
    params, sim = load_config_string(CONFIG)
    assert params.total_power_PB == pytest.approx(100.0, rel=1e-12)
    assert params.sigma2_N == pytest.approx(1e-5, rel=1e-12)
    assert params.power_ratio_k == pytest.approx(7.0 / 3.0, rel=1e-15)
    assert sim == SimulationSettings(trials=250000, seed=99, workers=2)


def test_load_config_defaults_when_keys_missing():
    params, sim = load_config_string("[system]\nrate = 2.0\n")
    assert params.rate_R == 2.0
    assert params.d_BF == 35.0
    assert sim.trials == 1_000_000


def test_load_config_rejects_garbage():
    with pytest.raises(ValidationError):
        load_config_string("[system]\nrate = not-a-number\n")


def test_packaged_defaults_match_code_defaults():
    from importlib.resources import files

    text = files("swiptcoop").joinpath("data/defaults.ini").read_text()
    params, sim = load_config_string(text)
    ref = SystemParams()
    for field in ("rate_R", "eta", "alpha", "d_BN", "d_BF", "d_NF",
                  "lambda_BN", "lambda_BF", "lambda_NF"):
        assert getattr(params, field) == getattr(ref, field)
    assert params.total_power_PB == pytest.approx(ref.total_power_PB, rel=1e-12)
    assert params.sigma2_N == pytest.approx(ref.sigma2_N, rel=1e-12)
    assert params.power_ratio_k == pytest.approx(ref.power_ratio_k, rel=1e-15)
