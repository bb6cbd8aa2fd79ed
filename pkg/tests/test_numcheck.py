import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from umbral.algebra import Polynomial
from umbral.errors import DomainError, NoConvergence, RayDivergence, TruncationFailure
from umbral.families import euler_numbers_positive, make_family
from umbral.numcheck import (
    AcceleratorParams,
    Decay,
    accelerator_contour,
    accelerator_eval,
    accelerator_moment,
    accelerator_moment_exact,
    bernoulli_abel_plana,
    euler_integral_rep,
    euler_number_integral,
    gamma_eval,
    hermite_d_check,
    integrate_semiaxis,
    log_gamma,
    run_suite,
    weierstrass_forward,
    weierstrass_inverse,
)
from umbral.sheffer import sheffer_egf

from oracles import bernoulli_numbers

SQRT_PI = math.sqrt(math.pi)


def c2_closed(z):
    return math.exp(-z * z / 4) / SQRT_PI


# -- Gamma -------------------------------------------------------------------

def test_gamma_examples():
    assert abs(gamma_eval(0.5) - SQRT_PI) <= 1e-13 * SQRT_PI
    assert gamma_eval(5) == 24
    x = 4 / 3
    assert abs(gamma_eval(x) * x / gamma_eval(x + 1) - 1) < 1e-13
    with pytest.raises(DomainError):
        gamma_eval(0)
    with pytest.raises(DomainError):
        gamma_eval(-1.5)


@given(st.floats(min_value=1e-3, max_value=170))
def test_gamma_relative_accuracy(x):
    # stdlib math.gamma is the independent reference
    assert abs(gamma_eval(x) / math.gamma(x) - 1) <= 1e-13


@given(st.floats(min_value=1e-3, max_value=1e4))
def test_log_gamma(x):
    assert abs(log_gamma(x) - math.lgamma(x)) <= 1e-12 * max(1.0, abs(math.lgamma(x)))


# -- accelerator kernel ----------------------------------------------------

def test_accelerator_examples():
    p2 = AcceleratorParams(2)
    assert p2.beta == 2
    assert abs(accelerator_eval(p2, 1).real - 0.4393912894677224) < 1e-15
    for alpha in (1.5, 2, 3, 4.5):
        p = AcceleratorParams(alpha)
        c0 = math.sin(math.pi / p.beta) * gamma_eval(1 / alpha) / math.pi
        assert abs(accelerator_eval(p, 0) - c0) < 1e-15
    p3 = AcceleratorParams(3)
    v = accelerator_eval(p3, 2)
    n = 200
    a, b = accelerator_eval(p3, 2, nterms=n), accelerator_eval(p3, 2, nterms=2 * n)
    assert abs(a - b) < 1e-12 and abs(v - b) < 1e-12
    with pytest.raises(DomainError):
        AcceleratorParams(1)


def test_c2_series_against_closed_form():
    p = AcceleratorParams(2)
    for z in np.linspace(0, 5, 101):
        assert abs(accelerator_eval(p, z).real - c2_closed(z)) <= 1e-12


def test_c2_complex_argument():
    p = AcceleratorParams(2)
    z = 1 + 0.5j
    assert abs(accelerator_eval(p, z) - np.exp(-z * z / 4) / SQRT_PI) < 1e-13


def test_series_cap():
    with pytest.raises(TruncationFailure):
        accelerator_eval(AcceleratorParams(1.05), 200)


@pytest.mark.parametrize("alpha", [2, 3, 4, 5])
def test_contour_agrees_with_series(alpha):
    s = np.linspace(0, 4, 41)
    series = np.array([accelerator_eval(AcceleratorParams(alpha), x).real for x in s])
    assert np.max(np.abs(accelerator_contour(alpha, s) - series)) < 1e-12


def test_contour_c2_far_tail_is_relatively_accurate():
    s = np.array([8.0, 15.0, 25.0])
    exact = np.exp(-s * s / 4) / SQRT_PI
    assert np.all(np.abs(accelerator_contour(2, s) / exact - 1) < 1e-12)


def test_contour_domain():
    with pytest.raises(DomainError):
        accelerator_contour(6, [1.0])
    with pytest.raises(DomainError):
        accelerator_contour(3, [-1.0])


# -- quadrature --------------------------------------------------------------

def test_integrate_examples():
    r = integrate_semiaxis(lambda s: np.exp(-s), Decay.exponential(1), 1e-12)
    assert abs(r.value - 1) < 1e-12 and r.err_estimate >= 0 and r.evaluations > 0
    r = integrate_semiaxis(lambda s: s / np.expm1(2 * np.pi * s), Decay.exponential(2 * math.pi), 1e-12)
    assert abs(r.value - 1 / 24) < 1e-12
    r = integrate_semiaxis(lambda s: 2 * s**2 / (2 * np.cosh(np.pi * s / 2)), Decay.exponential(math.pi / 2), 1e-12)
    assert abs(r.value - 1) < 1e-12


def test_integrate_no_convergence():
    with pytest.raises(NoConvergence):
        integrate_semiaxis(lambda s: 1 / (1 + s), Decay.exponential(1), 1e-10, max_panels=50)


def test_abel_plana_examples():
    assert abs(bernoulli_abel_plana(Polynomial([1]), 0.3).value - 1) < 1e-14
    assert abs(bernoulli_abel_plana(Polynomial.monomial(1), 0.0).value + 0.5) < 1e-14
    b = bernoulli_numbers(12)
    for n in range(13):
        assert abs(bernoulli_abel_plana(Polynomial.monomial(n), 0.0).value - float(b[n])) <= 1e-9


def test_euler_rep_examples():
    assert abs(euler_integral_rep(Polynomial([1]), 0.7).value - 1) < 1e-13
    assert abs(euler_integral_rep(Polynomial.monomial(2), 0.5).value + 0.25) < 1e-13


def test_euler_number_integrals():
    for j, e in enumerate(euler_numbers_positive(4)):
        assert abs(euler_number_integral(j).value - e) <= 1e-8


def test_d_hermite_examples():
    H = sheffer_egf(make_family("d_hermite", {"d": 2}).spec, 3)
    assert abs(hermite_d_check(2, 3, 1.0, "forward", H[3]).value - 3) <= 1e-6
    assert abs(accelerator_moment(2, 3).value - 6) <= 1e-8
    assert accelerator_moment_exact(2, 3) == 6
    with pytest.raises(ValueError):
        hermite_d_check(2, 3, 1.0, "forward")
    with pytest.raises(DomainError):
        hermite_d_check(0, 3, 1.0, "inverse")


def test_d_hermite_reports_divergent_kernel():
    # beyond the contour's range the series kernel cannot resolve the tail
    with pytest.raises(RayDivergence):
        hermite_d_check(6, 2, 0.5, "inverse")


def test_weierstrass_examples():
    assert abs(weierstrass_inverse(2, 0.0).value + 1) < 1e-12
    He = sheffer_egf(make_family("hermite").spec, 4)
    assert abs(weierstrass_forward(He[4], 1.5).value - 1.5**4) < 1e-12


BERN = sheffer_egf(make_family("bernoulli").spec, 12)
EULER = sheffer_egf(make_family("euler").spec, 10)


@settings(max_examples=25)
@given(st.integers(0, 12), st.sampled_from([0.0, 0.5, 1.0, 2.0, -1.25]), st.sampled_from([1e-8, 1e-10, 1e-12]))
def test_abel_plana_error_estimate_is_honest(n, x, tol):
    r = bernoulli_abel_plana(Polynomial.monomial(n), x, tol)
    exact = float(BERN[n](Fraction(x)))
    assert abs(r.value - exact) <= r.err_estimate
    tighter = bernoulli_abel_plana(Polynomial.monomial(n), x, tol / 100)
    assert abs(r.value - tighter.value) <= r.err_estimate


@settings(max_examples=25)
@given(st.integers(0, 10), st.sampled_from([0.0, 0.5, 1.0, 2.0]), st.sampled_from([1e-8, 1e-10, 1e-12]))
def test_euler_error_estimate_is_honest(n, x, tol):
    r = euler_integral_rep(Polynomial.monomial(n), x, tol)
    assert abs(r.value - float(EULER[n](Fraction(x)))) <= r.err_estimate


@settings(max_examples=10)
@given(st.integers(0, 8), st.sampled_from([1, 2, 3]))
def test_moment_error_estimate_is_honest(n, d):
    r = accelerator_moment(d, n, 1e-10)
    assert abs(r.value - accelerator_moment_exact(d, n)) <= r.err_estimate + 1e-13 * accelerator_moment_exact(d, n)


def test_suite_rows_are_deterministic_and_tsv():
    a = run_suite("euler_numbers")
    b = run_suite("euler_numbers")
    assert [r.to_tsv() for r in a] == [r.to_tsv() for r in b]
    assert all(len(r.to_tsv().split("\t")) == 8 for r in a)
    with pytest.raises(ValueError):
        run_suite("nope")
