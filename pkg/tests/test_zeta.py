import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetakit import zeta
from zetakit.numeric import DomainError, NearZeroDenominatorError, PoleError

from _util import rel


def mp_xi(s):
    with mpmath.workdps(30):
        s = mpmath.mpc(s)
        return complex(s * (s - 1) * mpmath.zeta(s) * mpmath.gamma(s / 2) * mpmath.pi ** (-s / 2))


def mp_zeta(s):
    with mpmath.workdps(30):
        return complex(mpmath.zeta(mpmath.mpc(s)))


sigma = st.floats(-1, 3, allow_nan=False)
height = st.floats(0, 30, allow_nan=False)


# xi_basic

def test_xi_basic_anchors():
    assert zeta.xi_basic(0).xi == 1
    r = zeta.xi_basic(2, 5)
    assert abs(r.xi - math.pi / 3) < 1e-12
    assert r.K == 5 and len(r.terms) == 5
    assert 0 < r.tail_bound < 1e-40


def first_zero_height():
    # bisection on the real function xi(1/2 + it) built from the alternating-series oracle
    def f(t):
        s = 0.5 + 1j * t
        z = zeta.reference_zeta(s)
        return (s * (s - 1) * z * cmath.exp(mpmath_loggamma(s / 2)) * math.pi ** (-s / 2)).real

    lo, hi = 14.0, 14.3
    flo = f(lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mpmath_loggamma(z):
    from zetakit.numeric import log_gamma
    return log_gamma(z)


def test_xi_basic_first_zero():
    t0 = first_zero_height()
    assert abs(t0 - 14.134725) < 1e-6
    assert abs(zeta.xi_basic(0.5 + 1j * t0, 5).xi) < 1e-12


@settings(max_examples=60, deadline=None)
@given(sigma, height)
def test_xi_basic_matches_mpmath_absolutely(x, t):
    s = complex(x, t)
    if s in (0, 1):
        return
    # the terms are O(|s|^2) and each carries ~1e-16 relative error
    assert abs(zeta.xi_basic(s).xi - mp_xi(s)) < 1e-13


@settings(max_examples=80, deadline=None)
@given(st.floats(-10, 10), st.floats(-40, 40))
def test_functional_equation(x, t):
    s = complex(x, t)
    assert abs(zeta.xi_basic(s).xi - zeta.xi_basic(1 - s).xi) <= 1e-13 * max(1.0, abs(zeta.xi_basic(s).xi))


def test_truncation_errors_decrease():
    for s in (3.0, 0.5 + 10j, -0.5 + 4j):
        errs = zeta.truncation_errors(s)
        assert all(a > b for a, b in zip(errs, errs[1:]))
        # each step gains at least e^{-(2K+1) pi} or so
        assert errs[1] / errs[0] < math.exp(-2 * math.pi)


def test_tail_bound_covers_truncation():
    s = 0.5 + 10j
    ref = zeta.xi_basic(s, 8).xi
    for K in (1, 2, 3):
        r = zeta.xi_basic(s, K)
        assert abs(r.xi - ref) <= 2 * r.tail_bound


# xi_general

def test_xi_general_x_one():
    for s in (3.0, 0.3 + 7j, -0.8 + 2j):
        assert abs(zeta.xi_general(s, 1.0).xi - zeta.xi_basic(s).xi) < 1e-12


@pytest.mark.parametrize("x", [1.05, 1.2, 1.3 + 0.2j, 0.8 - 0.3j])
@pytest.mark.parametrize("s", [3.0, 0.5 + 14j, -1 + 25j, 2.5 + 5j])
def test_x_independence(s, x):
    assert abs(zeta.xi_general(s, x, 6).xi - zeta.xi_basic(s, 6).xi) < 1e-9


def test_xi_general_vanishing_prefactor():
    s = 0.5 + 5j
    x = s / (s - 1)
    assert abs((1 - s) * x ** s + s * x ** (s - 1)) < 1e-14
    assert abs(zeta.xi_general(s, x).xi - zeta.xi_basic(s).xi) < 1e-12


@pytest.mark.parametrize("x", [1 + 2j, -1.0, 0.0, 1 + 1j])
def test_xi_general_domain(x):
    with pytest.raises(DomainError, match="Re\\(x\\) > \\|Im\\(x\\)\\|"):
        zeta.xi_general(2.0, x)


# upsilon

def test_xi_upsilon_anchors():
    assert abs(zeta.xi_upsilon(2, 1.0, 6).xi - math.pi / 3) < 1e-9
    assert abs(zeta.xi_upsilon(3).xi - zeta.xi_basic(3).xi) < 1e-9


@pytest.mark.parametrize("k", [1, -1, 3])
def test_xi_upsilon_prefactor_zeros(k):
    with pytest.raises(NearZeroDenominatorError):
        zeta.xi_upsilon(1 + 2j * math.pi * k / zeta.LN2)
    with pytest.raises(NearZeroDenominatorError):
        zeta.xi_upsilon(2j * math.pi * k / zeta.LN2)


@settings(max_examples=60, deadline=None)
@given(sigma, height, st.sampled_from([1.0, 1.1, 0.9 + 0.1j]))
def test_upsilon_agreement(x, t, xx):
    s = complex(x, t)
    try:
        value = zeta.xi_upsilon(s, xx).xi
    except NearZeroDenominatorError:
        return
    assert abs(value - zeta.xi_basic(s).xi) < 1e-8


def test_upsilon_factor_smooth_at_zero_and_one():
    # removable singularities of the normalisation
    assert cmath.isfinite(zeta.upsilon_factor(0))
    assert cmath.isfinite(zeta.upsilon_factor(1))
    assert abs(zeta.xi_upsilon(1e-9).xi - 1) < 1e-7


def test_completed_zeta_dispatch():
    s = 0.7 + 3j
    base = zeta.xi_basic(s).xi
    assert abs(zeta.completed_zeta(s).xi - base) < 1e-15
    assert abs(zeta.completed_zeta(s, "general", x=1.1).xi - base) < 1e-9
    assert abs(zeta.completed_zeta(s, "upsilon").xi - base) < 1e-9
    with pytest.raises(DomainError):
        zeta.completed_zeta(s, "bogus")


# zeta_value

def test_zeta_value_anchors():
    assert abs(zeta.zeta_value(0) + 0.5) < 1e-14
    assert zeta.zeta_value(-2) == 0
    assert zeta.zeta_value(-4) == 0
    assert abs(zeta.zeta_value(3) - 1.2020569032) < 1e-10
    assert rel(zeta.zeta_value(2), math.pi ** 2 / 6) < 1e-12
    assert rel(zeta.zeta_value(4), math.pi ** 4 / 90) < 1e-12


def test_zeta_value_pole():
    with pytest.raises(PoleError):
        zeta.zeta_value(1)


@pytest.mark.parametrize("s", [3, 0.5 + 14j, -0.5 + 2j, 2 + 20j, -1 + 0.5j, 1 + 1e-8j])
def test_zeta_value_matches_mpmath(s):
    assert rel(zeta.zeta_value(s), mp_zeta(s)) < 1e-10


@settings(max_examples=60, deadline=None)
@given(sigma, st.floats(0, 15))
def test_zeta_value_oracle_low(x, t):
    s = complex(x, t)
    if abs(s - 1) < 1e-3:
        return
    assert rel(zeta.zeta_value(s, "basic", 5), zeta.reference_zeta(s)) < 1e-10


# identities

@pytest.mark.parametrize("s,x", [(3, 1.0), (3, 1.2), (0.5 + 3j, 1.1), (2.5, 0.9 + 0.2j)])
def test_fourier_residual_is_the_lattice_tail(s, x):
    # cutting the lower-gamma sum at K drops sum_{k>K} gamma(s/2, .)/(k^2 pi)^(s/2),
    # which is Gamma(s/2) pi^(-s/2) zeta(s, K+1) up to e^{-49 pi}
    with mpmath.workdps(30):
        sm = mpmath.mpc(s)
        tail = abs(complex(mpmath.gamma(sm / 2) * mpmath.pi ** (-sm / 2) * mpmath.zeta(sm, 7)))
    assert rel(zeta.fourier_gamma_residual(s, x, 6), tail) < 1e-8


def test_fourier_residual_errors():
    with pytest.raises(DomainError):
        zeta.fourier_gamma_residual(0)
    with pytest.raises(DomainError):
        zeta.fourier_gamma_residual(1)
    with pytest.raises(DomainError):
        zeta.fourier_gamma_residual(3, 1.0, 6, tail="bogus")


def test_fourier_residual_tail_mode():
    # with the omitted lattice terms folded in, both sides agree to rounding
    assert zeta.fourier_gamma_residual(3, 1.2, 6, tail="zeta") < 1e-12
    assert zeta.fourier_gamma_residual(0.5 + 3j, 1.1, 6, tail="zeta") < 1e-12


# reference oracle

def test_reference_anchors():
    assert rel(zeta.reference_zeta(2), math.pi ** 2 / 6) < 1e-13
    assert rel(zeta.reference_zeta(4), math.pi ** 4 / 90) < 1e-13
    high = zeta.xi_basic(0.5 + 10j, 8).xi
    assert rel(zeta.reference_zeta(0.5 + 10j), zeta.zeta_from_xi(0.5 + 10j, high)) < 1e-11


@settings(max_examples=60, deadline=None)
@given(st.floats(-1.9, 3), height)
def test_reference_matches_mpmath(x, t):
    s = complex(x, t)
    if abs(s - 1) < 1e-3:
        return
    assert rel(zeta.reference_zeta(s), mp_zeta(s)) < 1e-12


def test_reference_errors():
    with pytest.raises(PoleError):
        zeta.reference_zeta(1)
    with pytest.raises(DomainError):
        zeta.reference_zeta(-2.5)


def test_convergence_slope_value():
    # measured slope of log error against K^2 is about -1.42 pi, see ledger
    m = zeta.convergence_slope(3.0)
    assert -1.6 * math.pi < m < -1.3 * math.pi
