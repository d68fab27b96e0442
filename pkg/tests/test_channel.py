import math

import numpy as np
import pytest
from scipy import stats

from swiptcoop import channel

from conftest import binom_3sigma


def test_empirical_mean_matches_exponential_law(defaults):
    rng = channel.block_generator(seed=1, block=0)
    draws = channel.exponential(rng, 1.0, 1_000_000)
    assert abs(draws.mean() - 1.0) < 0.005


def test_empirical_cdf_at_threshold(defaults):
    # P{y < t} for the marginal decode threshold t = 1.5625e-4
    t = 1.5625e-4
    n = 10_000_000
    rng = channel.block_generator(seed=2, block=0)
    draws = channel.exponential(rng, 1.0, n)
    p_hat = float((draws < t).mean())
    expected = -math.expm1(-t)
    assert abs(p_hat - expected) <= binom_3sigma(expected, n)


def test_fixed_seed_reproduces_bitwise(defaults):
    a = channel.sample_block(seed=7, block=3, count=1000, params=defaults)
    b = channel.sample_block(seed=7, block=3, count=1000, params=defaults)
    for u, v in zip(a, b):
        assert np.array_equal(u, v)


def test_scalar_sample_deterministic(defaults):
    r1 = channel.sample(channel.block_generator(5, 0), defaults)
    r2 = channel.sample(channel.block_generator(5, 0), defaults)
    assert (r1.x, r1.y, r1.z) == (r2.x, r2.y, r2.z)
    assert min(r1.x, r1.y, r1.z) > 0.0


def test_block_prefix_independent_of_count(defaults):
    # trial i's draws depend only on (seed, i), not on how many trials follow
    small = channel.sample_block(seed=11, block=0, count=10, params=defaults)
    big = channel.sample_block(seed=11, block=0, count=5000, params=defaults)
    for u, v in zip(small, big):
        assert np.array_equal(u, v[:10])


def test_blocks_differ_and_seeds_differ(defaults):
    a = channel.sample_block(seed=11, block=0, count=100, params=defaults)
    b = channel.sample_block(seed=11, block=1, count=100, params=defaults)
    c = channel.sample_block(seed=12, block=0, count=100, params=defaults)
    assert not np.array_equal(a[0], b[0])
    assert not np.array_equal(a[0], c[0])


def test_kolmogorov_smirnov_against_exponential(defaults):
    n = 100_000
    rng = channel.block_generator(seed=3, block=0)
    for mean in (0.5, 1.0, 2.0):
        draws = channel.exponential(rng, mean, n)
        d_stat = stats.kstest(draws, "expon", args=(0.0, mean)).statistic
        critical_1pct = 1.628 / math.sqrt(n)
        assert d_stat < critical_1pct


def test_gain_components_uncorrelated(defaults):
    n = 1_000_000
    blocks = []
    start = 0
    while start < n:
        count = min(channel.BLOCK_SIZE, n - start)
        blocks.append(channel.sample_block(4, start // channel.BLOCK_SIZE, count, defaults))
        start += count
    x = np.concatenate([b[0] for b in blocks])
    y = np.concatenate([b[1] for b in blocks])
    z = np.concatenate([b[2] for b in blocks])
    for u, v in ((x, y), (x, z), (y, z)):
        assert abs(np.corrcoef(u, v)[0, 1]) < 0.005


def test_means_follow_params(defaults):
    p = defaults.replace(lambda_BF=2.0, lambda_BN=0.5, lambda_NF=3.0)
    x, y, z = channel.sample_block(seed=6, block=0, count=channel.BLOCK_SIZE, params=p)
    assert x.mean() == pytest.approx(2.0, rel=0.05)
    assert y.mean() == pytest.approx(0.5, rel=0.05)
    assert z.mean() == pytest.approx(3.0, rel=0.05)


def test_sample_block_count_bounds(defaults):
    with pytest.raises(ValueError):
        channel.sample_block(1, 0, 0, defaults)
    with pytest.raises(ValueError):
        channel.sample_block(1, 0, channel.BLOCK_SIZE + 1, defaults)
