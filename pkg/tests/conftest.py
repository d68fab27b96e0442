import math

import numpy as np
import pytest

from swiptcoop.params import SystemParams


@pytest.fixture
def defaults():
    """Baseline scenario: 20 dBm total power, k = 7/3, theta = rho = 0.5."""
    return SystemParams()


@pytest.fixture
def defaults_0dbm():
    """Same scenario at 0 dBm so outage probabilities sit near 1e-2."""
    return SystemParams(total_power_PB=1.0)


def binom_3sigma(p_hat, n):
    """Three binomial standard deviations around an empirical frequency."""
    return 3.0 * math.sqrt(max(p_hat, 1.0 / n) * (1.0 - min(p_hat, 1.0)) / n)


def random_valid_params(rng, protocol, pb_mw=1.0):
    """A random parameter set satisfying every invariant for ``protocol``."""
    rate = rng.uniform(0.5, 2.0)
    k = (2.0 ** rate - 1.0) * rng.uniform(1.3, 3.0) + rng.uniform(0.0, 1.0)
    d_bn = rng.uniform(10.0, 30.0)
    return SystemParams(
        rate_R=rate,
        total_power_PB=pb_mw,
        power_ratio_k=k,
        power_fraction_rho=rng.uniform(0.25, 0.75),
        freq_fraction_theta=rng.uniform(0.25, 0.75),
        eta=rng.uniform(0.3, 1.0),
        alpha=rng.uniform(2.0, 3.0),
        d_BN=d_bn,
        d_BF=d_bn + rng.uniform(5.0, 20.0),
        d_NF=rng.uniform(5.0, 20.0),
        lambda_BN=rng.uniform(0.5, 2.0),
        lambda_BF=rng.uniform(0.5, 2.0),
        lambda_NF=rng.uniform(0.5, 2.0),
        sigma2_N=10.0 ** rng.uniform(-6.0, -4.0),
        sigma2_F=10.0 ** rng.uniform(-6.0, -4.0),
    )


def gain_batch(rng, n, spread=4.0):
    """Random positive gain triples spanning decades around the thresholds."""
    x = 10.0 ** rng.uniform(-6.0, spread - 4.0, n)
    y = 10.0 ** rng.uniform(-6.0, spread - 4.0, n)
    z = 10.0 ** rng.uniform(-6.0, spread - 4.0, n)
    return x, y, z
