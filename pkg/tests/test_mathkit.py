import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vmfdoppler import doppler
from vmfdoppler.mathkit import (
    DomainError,
    IntegrationError,
    QuadratureSpec,
    bessel_i0e,
    integrate,
    log_sinh,
)

mpmath.mp.dps = 40


def i0e_oracle(x):
    x = mpmath.mpf(x)
    return float(mpmath.besseli(0, x) * mpmath.exp(-abs(x)))


def test_i0e_known_values():
    assert bessel_i0e(0.0) == 1.0
    # power series oracle, 40 terms at 50 digits
    assert bessel_i0e(1.0) == pytest.approx(0.46575960759364043, rel=1e-15)
    assert bessel_i0e(100.0) == pytest.approx(0.03994437929909668, rel=1e-13)


def test_i0e_against_high_precision_sweep():
    xs = np.concatenate([np.linspace(0, 40, 801), np.geomspace(1e-6, 1e4, 400), [14.999999, 15.0, 15.000001]])
    worst = max(abs(bessel_i0e(float(x)) - i0e_oracle(x)) / i0e_oracle(x) for x in xs)
    assert worst < 1e-12


def test_i0e_split_point_continuity():
    below = bessel_i0e(math.nextafter(15.0, 0.0))
    above = bessel_i0e(15.0)
    assert abs(below - above) / above < 1e-12


@given(st.floats(-1e5, 1e5, allow_nan=False))
def test_i0e_even_and_bounded(x):
    v = bessel_i0e(x)
    assert v == bessel_i0e(-x)
    assert 0.0 < v <= 1.0


@given(st.floats(0, 1e4), st.floats(0, 1e4))
def test_i0e_decreasing(x, y):
    lo, hi = sorted((x, y))
    assert bessel_i0e(lo) >= bessel_i0e(hi)


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_i0e_rejects_non_finite(bad):
    with pytest.raises(DomainError):
        bessel_i0e(bad)


def test_log_sinh_values():
    assert log_sinh(1.0) == pytest.approx(0.16143936157119563, rel=1e-13)
    assert log_sinh(1000.0) == pytest.approx(999.3068528194401, rel=1e-15)
    assert log_sinh(1e-8) == pytest.approx(math.log(1e-8), rel=1e-13)
    assert math.isfinite(log_sinh(1e6))


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_log_sinh_domain(bad):
    with pytest.raises(DomainError):
        log_sinh(bad)


@given(st.floats(1e-3, 30))
def test_log_sinh_matches_sinh(x):
    assert math.exp(log_sinh(x)) == pytest.approx(math.sinh(x), rel=1e-12)


def test_log_sinh_switchover_continuity():
    below = log_sinh(0.5)
    above = log_sinh(math.nextafter(0.5, 1.0))
    assert abs(above - below) < 1e-14


def test_integrate_basic():
    assert integrate(lambda x: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-12)
    assert integrate(math.cos, -math.pi / 2, math.pi / 2) == pytest.approx(2.0, abs=1e-10)
    assert integrate(math.sin, 1.0, 1.0) == 0.0


@given(
    st.lists(st.floats(-10, 10), min_size=4, max_size=4),
    st.floats(-5, 5),
    st.floats(0, 5),
)
def test_integrate_cubic_exact(coef, a, width):
    b = a + width
    poly = np.polynomial.Polynomial(coef)
    exact = poly.integ()(b) - poly.integ()(a)
    assert integrate(lambda x: float(poly(x)), a, b) == pytest.approx(exact, abs=1e-10, rel=1e-12)


def test_integrate_elevation_marginal_normalized():
    # kappa = 10, motion perpendicular to the mean direction
    p = doppler.DopplerParams(10.0, 0.0, 100.0)
    g = doppler.elevation_marginal(p)
    adaptive = integrate(g, -math.pi / 2, math.pi / 2)
    nodes, weights = np.polynomial.legendre.leggauss(200)
    gauss = sum(w * g(math.pi / 2 * x) for x, w in zip(nodes, weights)) * math.pi / 2
    assert adaptive == pytest.approx(1.0, abs=1e-10)
    assert adaptive == pytest.approx(gauss, abs=1e-10)


def test_integrate_reports_budget_exhaustion():
    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=3)
    with pytest.raises(IntegrationError) as err:
        integrate(lambda x: math.sqrt(abs(x)), -1.0, 1.0, spec)
    assert err.value.estimate == pytest.approx(4.0 / 3.0, rel=1e-2)


def test_integrate_rejects_reversed_bounds():
    with pytest.raises(DomainError):
        integrate(lambda x: x, 1.0, 0.0)


@pytest.mark.parametrize("kw", [dict(abs_tol=0), dict(rel_tol=-1), dict(max_subdivisions=0)])
def test_quadrature_spec_validation(kw):
    with pytest.raises(DomainError):
        QuadratureSpec(**kw)
