import math
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from tailoredbeams.mathkit import (GK_NODES, GK_WEIGHTS, QuadratureConfig, RootBracketError,
                                   bessel_j0, find_root, integrate_1d, laguerre, laguerre_all,
                                   scaled_laguerre_pole, scaled_laguerre_series)


def laguerre_expansion(p, x):
    return sum((-1) ** k * comb(p, k) * x**k / factorial(k) for k in range(p + 1))


# -- Laguerre ---------------------------------------------------------------

@pytest.mark.parametrize("p, x, expected", [(0, 17.3, 1.0), (1, 2.0, -1.0), (2, 2.0, -1.0)])
def test_laguerre_examples(p, x, expected):
    assert laguerre(p, x) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("p", range(7))
@pytest.mark.parametrize("x", range(-3, 4))
def test_laguerre_matches_expansion(p, x):
    assert laguerre(p, x) == pytest.approx(laguerre_expansion(p, x), rel=1e-10, abs=1e-13)


def test_laguerre_against_scipy_up_to_60():
    x = np.linspace(0.0, 120.0, 301)
    for p in (10, 30, 60):
        ref = special.eval_laguerre(p, x)
        scale = np.maximum(1.0, np.abs(ref))
        assert np.all(np.abs(laguerre(p, x) - ref) <= 1e-8 * scale)


def test_laguerre_all_stacks():
    x = np.linspace(-2, 5, 11)
    table = laguerre_all(8, x)
    assert table.shape == (9, 11)
    for p in range(9):
        np.testing.assert_allclose(table[p], laguerre(p, x), rtol=1e-14)


# -- scaled Laguerre pole form ------------------------------------------------

def test_scaled_pole_examples():
    assert scaled_laguerre_pole(0, -3.7, 12.0) == 1.0
    assert scaled_laguerre_pole(1, 0.0, 3.0) == pytest.approx(3.0)
    assert scaled_laguerre_pole(2, 0.5, 1.0) == pytest.approx(1.75)
    assert scaled_laguerre_pole(2, 0.5, 1.0) == pytest.approx(0.25 * laguerre(2, -2.0))


def _pole_terms(p, t, u):
    return [comb(p, m) * u**m * t ** (p - m) / factorial(m) for m in range(p + 1)]


@settings(max_examples=300, deadline=None)
@given(p=st.integers(0, 50), t=st.floats(1e-3, 2.0), u=st.floats(0.0, 100.0))
def test_scaled_pole_equals_laguerre_form_positive_t(p, t, u):
    # L_p at negative argument: all terms share a sign, so plain relative error applies
    direct = t**p * laguerre(p, -u / t)
    assert scaled_laguerre_pole(p, t, u) == pytest.approx(direct, rel=1e-8)


@settings(max_examples=300, deadline=None)
@given(p=st.integers(0, 50), t=st.floats(-4.0, -1e-3), u=st.floats(0.0, 100.0))
def test_scaled_pole_equals_laguerre_form_negative_t(p, t, u):
    # oscillating L_p: compare on the scale of the summed term magnitudes
    direct = t**p * laguerre(p, -u / t)
    scale = math.fsum(abs(x) for x in _pole_terms(p, t, u))
    assert abs(scaled_laguerre_pole(p, t, u) - direct) <= 1e-8 * scale


@settings(max_examples=200, deadline=None)
@given(p=st.integers(0, 50), u=st.floats(1e-3, 100.0))
def test_scaled_pole_continuous_at_zero(p, u):
    limit = u**p / factorial(p)
    eps = 1e-12 * u / (p + 1) ** 2
    for t in (-eps, 0.0, eps):
        assert scaled_laguerre_pole(p, t, u) == pytest.approx(limit, rel=1e-8, abs=1e-300)


@settings(max_examples=200, deadline=None)
@given(t=st.floats(-4.0, 2.0), u=st.floats(0.0, 100.0))
def test_scaled_series_matches_pole(t, u):
    series = scaled_laguerre_series(50, t, u)
    for p in (0, 1, 2, 7, 20, 50):
        ref = scaled_laguerre_pole(p, t, u)
        scale = math.fsum(abs(x) for x in _pole_terms(p, t, u))
        assert abs(series[p] - ref) <= 1e-9 * scale


# -- Gauss-Kronrod quadrature -------------------------------------------------

def test_gk_rule_is_exact_for_polynomials():
    for n in range(0, 23):
        exact = (1 - (-1) ** (n + 1)) / (n + 1)
        assert GK_WEIGHTS @ GK_NODES**n == pytest.approx(exact, abs=1e-14)


def test_integrate_polynomial():
    res = integrate_1d(lambda x: x**2, 0.0, 1.0)
    assert res.converged
    assert res.value == pytest.approx(1 / 3, rel=1e-12)


def test_integrate_gaussian():
    sigma = 0.37
    res = integrate_1d(lambda x: np.exp(-(x**2) / (2 * sigma**2)), -8 * sigma, 8 * sigma,
                       QuadratureConfig(rel_tol=1e-10))
    assert res.value == pytest.approx(sigma * math.sqrt(2 * math.pi), rel=1e-10)


def test_integrate_oscillatory():
    # antiderivative e^{-x}(40 sin 40x - cos 40x)/1601
    exact = (1.0 - math.exp(-math.pi)) / 1601.0
    res = integrate_1d(lambda x: np.cos(40 * x) * np.exp(-x), 0.0, math.pi,
                       QuadratureConfig(rel_tol=1e-10))
    assert res.converged
    assert abs(res.value - exact) <= max(res.error, 1e-10 * exact)
    assert res.value == pytest.approx(exact, rel=1e-9)


def test_integrate_vector_and_complex():
    res = integrate_1d(lambda x: np.stack([np.exp(1j * x), x], axis=1), 0.0, math.pi / 2,
                       QuadratureConfig(rel_tol=1e-12))
    np.testing.assert_allclose(res.value, [1 + 1j, math.pi**2 / 8], rtol=1e-12)


def test_integrate_reports_nonconvergence():
    cfg = QuadratureConfig(rel_tol=1e-14, max_subdivisions=4)
    res = integrate_1d(lambda x: np.sqrt(np.abs(x - 0.3)), 0.0, 1.0, cfg)
    assert not res.converged
    assert res.error > 0
    assert res.value == pytest.approx((0.3**1.5 + 0.7**1.5) * 2 / 3, rel=1e-2)


def _gauss_poly_exact(coef, a, b):
    """int_a^b sum_n coef[n] y^n e^{-y^2/2} dy from the moment recurrence."""
    ea, eb = math.exp(-a * a / 2), math.exp(-b * b / 2)
    moments = [math.sqrt(math.pi / 2) * (math.erf(b / math.sqrt(2)) - math.erf(a / math.sqrt(2))),
               ea - eb]
    for n in range(2, len(coef)):
        moments.append((n - 1) * moments[n - 2] + a ** (n - 1) * ea - b ** (n - 1) * eb)
    return sum(c * m for c, m in zip(coef, moments))


def test_error_estimate_is_conservative():
    rng = np.random.default_rng(20240607)
    honest = 0
    n_cases = 200
    for _ in range(n_cases):
        coef = rng.normal(size=rng.integers(1, 7))
        a = rng.uniform(-6, 0)
        b = rng.uniform(0.5, 6)
        cfg = QuadratureConfig(rel_tol=10 ** rng.uniform(-10, -4))
        res = integrate_1d(lambda y: np.polyval(coef[::-1], y) * np.exp(-y * y / 2), a, b, cfg)
        exact = _gauss_poly_exact(coef, a, b)
        honest += abs(res.value - exact) <= res.error
    assert honest >= 0.95 * n_cases


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=-1)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=2, initial_panels=3)


# -- root finding -----------------------------------------------------------

def test_find_root_examples():
    assert find_root(lambda x: x * x - 2, 1.0, 2.0) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert find_root(math.cos, 1.0, 2.0) == pytest.approx(math.pi / 2, abs=1e-12)


def test_find_root_requires_bracket():
    with pytest.raises(RootBracketError):
        find_root(lambda x: x * x + 1, -1.0, 1.0)


@given(r=st.floats(-10, 10), shift=st.floats(0.01, 5))
def test_find_root_linear(r, shift):
    x = find_root(lambda x: math.tanh(x - r), r - shift, r + 2 * shift, tol=1e-13)
    assert x == pytest.approx(r, abs=1e-12)


# -- Bessel J0 --------------------------------------------------------------

def test_j0_against_scipy():
    x = np.linspace(-60.0, 60.0, 24001)
    assert np.max(np.abs(bessel_j0(x) - special.j0(x))) <= 1e-8


def test_j0_examples():
    assert bessel_j0(0.0) == 1.0
    zero = find_root(bessel_j0, 2.0, 3.0, tol=1e-14)
    assert zero == pytest.approx(2.404826, abs=5e-7)


@given(x=st.floats(0, 500))
def test_j0_even(x):
    assert bessel_j0(-x) == bessel_j0(x)
