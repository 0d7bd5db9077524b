import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetakit import laguerre, numeric
from zetakit.numeric import DomainError

from _util import rel


def mp_laguerre(i, alpha, z, dps=40):
    with mpmath.workdps(dps):
        return complex(mpmath.laguerre(i, mpmath.mpc(alpha), mpmath.mpc(z)))


def test_explicit_anchors():
    a, z = 1.7 - 0.2j, 0.9 + 0.4j
    assert abs(laguerre.laguerre_explicit(1, a, z) - (1 + a - z)) < 1e-15
    assert rel(laguerre.laguerre_explicit(6, a, 0), numeric.binomial_general(6 + a, 6)) < 1e-14
    assert abs(laguerre.laguerre_explicit(2, 0, 1) + 0.5) < 1e-15


def test_explicit_degree_cap():
    with pytest.raises(DomainError):
        laguerre.laguerre_explicit(41, 0.0, 1.0)
    with pytest.raises(DomainError):
        laguerre.laguerre_explicit(-1, 0.0, 1.0)


def test_recur_anchors():
    assert laguerre.laguerre_recur(0, 2.3, 5.0) == 1
    assert abs(laguerre.laguerre_recur(1, 2, 3)) < 1e-15
    assert rel(laguerre.laguerre_recur(25, -0.5, math.pi), mp_laguerre(25, -0.5, math.pi)) < 1e-12


def test_shifted_anchors():
    assert laguerre.laguerre_shifted_recur(0, 0.7, 2.0) == 1
    b, z = 2.5 + 1j, 0.3
    assert abs(laguerre.laguerre_shifted_recur(1, b, z) - (b - z)) < 1e-15
    ref = mp_laguerre(15, 4 - 15, 2)
    assert rel(laguerre.laguerre_shifted_recur(15, 4, 2), ref) < 1e-10


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.7, 3 + 1j])
@pytest.mark.parametrize("z", [0.5, 1.0, math.pi, 2 - 1j])
def test_recursion_vs_explicit(alpha, z):
    for i in range(26):
        e = laguerre.laguerre_explicit(i, alpha, z)
        r = laguerre.laguerre_recur(i, alpha, z)
        assert abs(r - e) / (1 + abs(e)) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 60), st.floats(-0.9, 6), st.floats(0.05, 20))
def test_recursion_matches_mpmath(i, alpha, z):
    ref = mp_laguerre(i, alpha, z)
    assert abs(laguerre.laguerre_recur(i, alpha, z) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_batch_matches_single():
    batch = laguerre.laguerre_recur_batch(30, 1.5, 2 + 1j)
    assert batch.shape == (31,)
    for i in (0, 1, 7, 30):
        assert batch[i] == laguerre.laguerre_recur(i, 1.5, 2 + 1j)
    vals = laguerre.laguerre_recur_values(30, 1.5, 2 + 1j)
    assert np.allclose(vals, batch, rtol=1e-15, atol=0)


def test_recur_values_accepts_mpf():
    with mpmath.workdps(50):
        vals = laguerre.laguerre_recur_values(10, mpmath.mpf("4.5"), mpmath.pi * 4)
        ref = mpmath.laguerre(10, mpmath.mpf("4.5"), mpmath.pi * 4)
        assert isinstance(vals[-1], mpmath.mpf)
        assert abs(vals[-1] - ref) < mpmath.mpf(10) ** -40 * abs(ref)


@pytest.mark.parametrize("a,b,x,y", [(0.7, 1.3 - 0.5j, 1.1, 0.6 + 0.2j), (-0.4, 2.0, 3.0, -1.0)])
def test_convolution_identity(a, b, x, y):
    la = laguerre.laguerre_recur_batch(15, a, x)
    lb = laguerre.laguerre_recur_batch(15, b, y)
    for i in range(16):
        conv = sum(la[i - j] * lb[j] for j in range(i + 1))
        ref = laguerre.laguerre_recur(i, a + b + 1, x + y)
        assert abs(conv - ref) / max(1.0, abs(ref)) < 1e-10


@pytest.mark.parametrize("beta", [2.5, -1.3, 4 + 1j])
@pytest.mark.parametrize("z", [0.3, 2.0])
def test_shifted_consistency(beta, z):
    batch = laguerre.laguerre_shifted_batch(20, beta, z)
    for i in range(21):
        e = laguerre.laguerre_explicit(i, beta - i, z)
        assert abs(laguerre.laguerre_shifted_recur(i, beta, z) - e) / (1 + abs(e)) < 1e-10
        assert batch[i] == laguerre.laguerre_shifted_recur(i, beta, z)


def test_growth_law():
    # binom(3, j) = 0 for j > 3, so the integer beta of the brief is degenerate
    beta, z, j = 3.5, 1.0, 2000
    ratio = laguerre.laguerre_shifted_recur(j, beta, z) / numeric.binomial_general(beta, j)
    assert abs(ratio / math.e - 1) < 0.02


def test_asymptotic_minus_formula():
    # direct substitution, including the 1/2 factor of the classical estimate
    expected = 0.5 * 4 ** -0.25 / math.sqrt(math.pi) * math.exp(-0.5) * math.exp(2 * math.sqrt(4.5))
    assert rel(laguerre.laguerre_asymptotic(4, 0, 1, sign="-"), expected) < 1e-14


@pytest.mark.parametrize("alpha,z", [(0.0, 1.0), (0.5, 1.0), (1.0, 2.0), (-0.5, 0.3)])
def test_asymptotic_minus_ratio(alpha, z):
    i = 10_000
    ratio = laguerre.laguerre_recur(i, alpha, -z) / laguerre.laguerre_asymptotic(i, alpha, z, sign="-")
    assert abs(ratio - 1) < 0.05


def test_asymptotic_plus_ratio_away_from_cosine_zeros():
    alpha, z = 1.0, 2.0
    checked = 0
    for i in range(10_000, 10_040):
        est = laguerre.laguerre_asymptotic(i, alpha, z, sign="+")
        envelope = i ** (alpha / 2 - 0.25) / math.sqrt(math.pi) * math.exp(z / 2) * z ** (-alpha / 2 - 0.25)
        if abs(est) < 0.5 * envelope:
            continue
        ratio = laguerre.laguerre_recur(i, alpha, z) / est
        assert abs(ratio - 1) < 0.05
        checked += 1
    assert checked > 10


def test_asymptotic_domain():
    with pytest.raises(DomainError):
        laguerre.laguerre_asymptotic(10, 0, -1.0)
    with pytest.raises(DomainError):
        laguerre.laguerre_asymptotic(0, 0, 1.0)
    with pytest.raises(DomainError):
        laguerre.laguerre_asymptotic(10, 0, 1.0, sign="x")
