"""Special-function and quadrature accuracy against independent oracles.

The reference for K1 is a dual-series evaluation in 50-digit mpmath
arithmetic: the ascending series (exact at any argument once cancellation is
absorbed by the working precision) cross-checked against the large-argument
asymptotic series where the latter converges.  scipy.special.k1 serves as a
second, fully independent implementation check.
"""

import math

import mpmath as mp
import numpy as np
import pytest
from scipy.special import k1 as scipy_k1

from swiptcoop.numerics import (
    DomainError,
    QuadratureError,
    bessel_k1,
    one_minus_t_k1,
    quadrature,
    t_k1,
)

mp.mp.dps = 50


def k1_series_oracle(t):
    """Ascending-series K1 in high-precision arithmetic (DLMF 10.31.2).

    The series cancels ~e^(2t) of headroom against the 1/t and log terms, so
    the working precision grows with the argument.
    """
    with mp.workdps(50 + int(0.9 * float(t))):
        t = mp.mpf(t)
        half = t / 2
        i1 = mp.mpf(0)
        corr = mp.mpf(0)
        term = mp.mpf(1) / 2
        eps = mp.mpf(10) ** (-mp.mp.dps - 10)
        for m in range(5000):
            h = mp.digamma(m + 1) + mp.digamma(m + 2)
            i1 += term
            corr += h * term
            term = term * half * half / ((m + 1) * (m + 2))
            if term < eps * (1 + abs(i1)):
                break
        i1 *= t
        corr *= t
        return 1 / t + mp.log(half) * i1 - corr / 2


def k1_asymptotic_oracle(t):
    """Large-argument asymptotic series (DLMF 10.40.2), optimally truncated.

    The series diverges eventually; stopping at the smallest term bounds the
    error by roughly that term, ~exp(-2t), comfortably below 1e-20 for t >= 30.
    """
    t = mp.mpf(t)
    mu = mp.mpf(4)  # 4*nu^2 with nu = 1
    total = mp.mpf(1)
    term = mp.mpf(1)
    for j in range(1, 200):
        nxt = term * (mu - (2 * j - 1) ** 2) / (j * 8 * t)
        if abs(nxt) >= abs(term):
            break
        total += nxt
        term = nxt
    return mp.sqrt(mp.pi / (2 * t)) * mp.e ** (-t) * total


def test_series_and_asymptotic_oracles_agree():
    # the two independent expansions must agree where both converge
    for t in (30.0, 60.0, 120.0):
        a = k1_series_oracle(t)
        b = k1_asymptotic_oracle(t)
        assert abs(a / b - 1) < mp.mpf(1e-20)


def test_k1_reference_points():
    assert bessel_k1(1.0) == pytest.approx(0.6019072301972346, rel=1e-12)
    assert bessel_k1(10.0) == pytest.approx(1.8648773453825584e-05, rel=1e-10)


def test_k1_small_argument_limit():
    # t*K1(t) -> 1 as t -> 0
    assert t_k1(1e-6) == pytest.approx(1.0, abs=1e-6)
    assert t_k1(1e-13) == 1.0


def test_k1_against_dual_series_oracle_log_grid():
    # 50-point log grid over [1e-6, 100], 1e-10 relative
    grid = np.logspace(-6, 2, 50)
    ours = bessel_k1(grid)
    for t, v in zip(grid, ours):
        ref = float(k1_series_oracle(t))
        assert v == pytest.approx(ref, rel=1e-10), f"t={t}"


def test_k1_against_scipy_dense():
    grid = np.logspace(-8, math.log10(690), 500)
    assert bessel_k1(grid) == pytest.approx(scipy_k1(grid), rel=2e-10)


def test_k1_saturates_to_zero_past_underflow():
    assert bessel_k1(800.0) == 0.0
    assert bessel_k1(700.0) == pytest.approx(float(k1_asymptotic_oracle(700)), rel=1e-10)


def test_k1_domain_errors():
    for bad in (0.0, -1.0, float("nan"), float("inf")):
        with pytest.raises(DomainError):
            bessel_k1(bad)


def test_one_minus_t_k1_matches_high_precision():
    grid = np.logspace(-8, 1, 60)
    for t in grid:
        ref = float(1 - mp.mpf(float(t)) * k1_series_oracle(float(t)))
        assert one_minus_t_k1(float(t)) == pytest.approx(ref, rel=1e-10), f"t={t}"


def test_one_minus_t_k1_beats_naive_subtraction():
    t = 1e-6
    ref = float(1 - mp.mpf(t) * mp.besselk(1, mp.mpf(t)))
    stable = one_minus_t_k1(t)
    naive = 1.0 - t * bessel_k1(t)
    assert stable == pytest.approx(ref, rel=1e-10)
    assert abs(naive / ref - 1) > abs(stable / ref - 1)


def test_quadrature_polynomial():
    assert quadrature(lambda x: x, 0.0, 1.0) == pytest.approx(0.5, rel=1e-12)


def test_quadrature_t_k1():
    # oracle: fixed Gauss-Legendre at 10x the adaptive rule's resolution
    nodes, weights = np.polynomial.legendre.leggauss(512)
    x = 0.5 * (nodes + 1.0)
    oracle = 0.5 * float(weights @ t_k1(x))
    val = quadrature(t_k1, 0.0, 1.0, tol=1e-10)
    assert val == pytest.approx(oracle, rel=1e-9)
    assert val == pytest.approx(0.82148541038307, rel=1e-9)


def test_quadrature_zero_width():
    assert quadrature(lambda x: x * x, 2.0, 2.0) == 0.0


def test_quadrature_tolerance_is_respected():
    # oscillatory integrand with a known closed form:
    # int_0^10 sin(50x) e^-x dx = (50 - e^-10 (50 cos 500 + sin 500)) / 2501
    ref = (50.0 - math.exp(-10.0) * (50.0 * math.cos(500.0) + math.sin(500.0))) / 2501.0
    val = quadrature(lambda x: np.sin(50.0 * x) * np.exp(-x), 0.0, 10.0, tol=1e-10)
    assert val == pytest.approx(ref, rel=1e-9)


def test_quadrature_nonconvergence_carries_best_estimate():
    with pytest.raises(QuadratureError) as err:
        quadrature(lambda x: np.sin(50.0 * x) * np.exp(-x), 0.0, 10.0,
                   tol=1e-12, max_levels=2)
    assert math.isfinite(err.value.estimate)
    assert err.value.error_bound > 0.0


def test_quadrature_bad_bounds():
    with pytest.raises(DomainError):
        quadrature(lambda x: x, 1.0, 0.0)
    with pytest.raises(DomainError):
        quadrature(lambda x: x, 0.0, float("inf"))
