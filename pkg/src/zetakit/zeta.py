"""The completed zeta function s(s-1) zeta(s) Gamma(s/2) pi^(-s/2).

All three representations below are sums of scaled upper incomplete gamma
values Gamma(a, X) / X^a = e^-X * (continued-fraction ratio), which
converge like exp(-k^2 pi) in the summation index k.  They are entire in
s, so s = 1 needs no special treatment until zeta itself is recovered.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from zetakit.incgamma import DEFAULT_TOL, lower_gamma_series, upper_gamma_cf_scaled
from zetakit.numeric import (
    DomainError,
    NearZeroDenominatorError,
    PoleError,
    expm1c,
    gamma,
    log_gamma,
    log_sin_pi,
    pow_principal,
    rgamma,
)

DEFAULT_K = 6
LN2 = math.log(2.0)
_LOG_PI = math.log(math.pi)
_PRIMARY_PERIOD = 2.0 * math.pi / LN2


@dataclass(frozen=True)
class CompletedZetaValue:
    """xi = s(s-1) zeta(s) Gamma(s/2) / pi^(s/2), truncated at K terms.

    ``terms`` holds the K per-index contributions to xi in summation order,
    so differences between truncation levels can be formed without
    cancellation against the leading part.
    """

    xi: complex
    K: int
    tail_bound: float
    terms: tuple[complex, ...] = ()


def _scaled_upper(a: complex, x: complex, tol: float) -> complex:
    # Gamma(a, x) / x^a
    return cmath.exp(-x) * upper_gamma_cf_scaled(a, x, tol).value


def _check_x(x: complex) -> None:
    if not x.real > abs(x.imag):
        raise DomainError(f"x = {x} is outside the admissible region: requires Re(x) > |Im(x)|")


def _tail(s: complex, kk: float) -> float:
    # first omitted term of the basic series, using Gamma(a, X)/X^a ~ e^-X / X
    return 2.0 * abs(s * (1 - s)) * math.exp(-kk * kk * math.pi) / (kk * kk * math.pi)


def xi_basic(s, K: int = DEFAULT_K, tol: float = DEFAULT_TOL) -> CompletedZetaValue:
    """1 - s(1-s) sum_{k=1..K} [Gamma(s/2, k^2 pi)/(k^2 pi)^(s/2) + Gamma((1-s)/2, k^2 pi)/(k^2 pi)^((1-s)/2)]"""
    s = complex(s)
    if K < 0:
        raise DomainError("K must be >= 0")
    w = s * (1 - s)
    terms = []
    for k in range(1, K + 1):
        big = k * k * math.pi
        pair = _scaled_upper(s / 2, big, tol) + _scaled_upper((1 - s) / 2, big, tol)
        terms.append(-w * pair)
    total = 0j
    for t in reversed(terms):
        total += t
    return CompletedZetaValue(1.0 + total, K, _tail(s, K + 1), tuple(terms))


def xi_general(s, x, K: int = DEFAULT_K, tol: float = DEFAULT_TOL) -> CompletedZetaValue:
    """(1-s) x^s + s x^(s-1) + s(s-1) sum_k [Gamma(s/2, k^2 x^2 pi)/(k^2 pi)^(s/2)
    + Gamma((1-s)/2, k^2 pi/x^2)/(k^2 pi)^((1-s)/2)], for any Re(x) > |Im(x)|."""
    s, x = complex(s), complex(x)
    _check_x(x)
    xs = pow_principal(x, s)
    xs1 = pow_principal(x, s - 1)
    lead = (1 - s) * xs + s * xs1
    w = s * (s - 1)
    x2 = x * x
    terms = []
    for k in range(1, K + 1):
        big = k * k * math.pi
        # (k^2 x^2 pi)^(s/2) = (k^2 pi)^(s/2) x^s since |arg x| < pi/4
        pair = xs * _scaled_upper(s / 2, big * x2, tol) + xs1 * _scaled_upper((1 - s) / 2, big / x2, tol)
        terms.append(w * pair)
    total = 0j
    for t in reversed(terms):
        total += t
    kk = K + 1
    decay = min((x2).real, (1 / x2).real)
    tail = 2.0 * abs(w) * max(abs(xs), abs(xs1)) * math.exp(-kk * kk * math.pi * decay) / (kk * kk * math.pi * decay)
    return CompletedZetaValue(lead + total, K, tail, tuple(terms))


def _phi(w: complex) -> complex:
    # w / (e^w - 1), with phi(0) = 1
    if w == 0:
        return 1.0 + 0j
    den = expm1c(w)
    if abs(den) < 1e-13 * max(1.0, abs(w)):
        raise NearZeroDenominatorError("(2^s - 1)(1 - 2^(1-s)) vanishes")
    return w / den


def upsilon_factor(s) -> complex:
    """s(s-1) / ((2^s - 1)(1 - 2^(1-s))), continued through s = 0 and s = 1."""
    s = complex(s)
    return _phi(s * LN2) * _phi((1 - s) * LN2) / (LN2 * LN2)


def upsilon(s, x, K: int = DEFAULT_K, tol: float = DEFAULT_TOL) -> complex:
    """The second forward difference sum over the blocks (4k+1, 4k+2, 4k+3), k = 0..K-1."""
    s, x = complex(s), complex(x)
    xs = pow_principal(x, s)
    x2 = x * x
    total = 0j
    for k in reversed(range(K)):
        for m, c in ((1, 1.0), (2, -2.0), (3, 1.0)):
            big = (4 * k + m) ** 2 * math.pi / 4
            total += c * xs * _scaled_upper(s / 2, big * x2, tol)
    return total


def xi_upsilon(s, x=1.0, K: int = DEFAULT_K, tol: float = DEFAULT_TOL) -> CompletedZetaValue:
    """xi from Upsilon_x(s) + Upsilon_{1/x}(1-s).

    That sum equals (2^s - 1)(1 - 2^(1-s)) zeta(s) Gamma(s/2) pi^(-s/2); it is
    converted to the common xi normalisation by :func:`upsilon_factor`.
    Raises at the zeros s = 1/2 +/- 1/2 + 2 pi i m / ln 2 (m != 0) of that
    prefactor.
    """
    s, x = complex(s), complex(x)
    _check_x(x)
    factor = upsilon_factor(s)
    raw = upsilon(s, x, K, tol) + upsilon(1 - s, 1 / x, K, tol)
    kk = 4 * K + 1
    decay = min((x * x).real, (1 / (x * x)).real)
    tail = abs(factor) * 2.0 * math.exp(-kk * kk * math.pi * decay / 4) / (kk * kk * math.pi * decay / 4)
    return CompletedZetaValue(factor * raw, K, tail)


def completed_zeta(s, method: str = "basic", K: int = DEFAULT_K, x=None,
                   tol: float = DEFAULT_TOL) -> CompletedZetaValue:
    if method == "basic":
        return xi_basic(s, K, tol)
    if method == "general":
        return xi_general(s, 1.0 if x is None else x, K, tol)
    if method == "upsilon":
        return xi_upsilon(s, 1.0 if x is None else x, K, tol)
    raise DomainError(f"unknown method {method!r}")


def zeta_from_xi(s, xi) -> complex:
    """zeta(s) = xi pi^(s/2) / (2 (s-1) Gamma(1 + s/2)).

    Uses s Gamma(s/2) = 2 Gamma(1 + s/2), so s = 0 is regular and the
    trivial zeros s = -2, -4, ... come out exactly zero.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    return complex(xi) * cmath.exp(0.5 * s * math.log(math.pi)) * rgamma(1 + s / 2) / (2 * (s - 1))


def zeta_value(s, method: str = "basic", K: int = DEFAULT_K, x=None,
               tol: float = DEFAULT_TOL) -> complex:
    """Riemann zeta(s) for any s != 1."""
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    return zeta_from_xi(s, completed_zeta(s, method, K, x, tol).xi)


def fourier_gamma_residual(s, x=1.0, K: int = DEFAULT_K, tol: float = DEFAULT_TOL,
                           tail: str = "none") -> float:
    """|LHS - RHS| of the lower/upper gamma lattice identity

        x^s/s + x^(s-1)/(1-s) + sum_k gamma(s/2, k^2 pi x^2)/(k^2 pi)^(s/2)
            = sum_k Gamma((1-s)/2, k^2 pi/x^2)/(k^2 pi)^((1-s)/2)

    with both sums cut at k = K.  The left sum only decays like k^-Re(s),
    so with ``tail="none"`` the residual is dominated by the omitted lower
    gamma terms.  ``tail="zeta"`` adds Gamma(s/2) pi^(-s/2) (zeta(s) - H_K(s)),
    the k > K part of that sum less its exponentially small upper-gamma
    correction, with zeta(s) from :func:`reference_zeta`.
    """
    s, x = complex(s), complex(x)
    _check_x(x)
    if s == 0 or s == 1:
        raise DomainError("the lattice identity requires s not in {0, 1}")
    if tail not in ("none", "zeta"):
        raise DomainError("tail must be 'none' or 'zeta'")
    x2 = x * x
    xs1 = pow_principal(x, s - 1)
    lhs = pow_principal(x, s) / s + xs1 / (1 - s)
    rhs = 0j
    log_pi = math.log(math.pi)
    for k in range(1, K + 1):
        big = k * k * math.pi
        norm = cmath.exp(-0.5 * s * (2 * math.log(k) + log_pi))
        lhs += lower_gamma_series(s / 2, big * x2, tol).value * norm
        rhs += xs1 * _scaled_upper((1 - s) / 2, big / x2, tol)
    if tail == "zeta":
        partial = sum(cmath.exp(-s * math.log(k)) for k in range(1, K + 1))
        lhs += gamma(s / 2) * cmath.exp(-0.5 * s * log_pi) * (reference_zeta(s) - partial)
    return abs(lhs - rhs)


# Alternating (eta) series with Borwein's binomial weights.
_REF_MIN_REAL = -2.0


def _borwein_terms(n: int) -> list[float]:
    # e_j = (-1)^j (sum_{k=0}^{j-n} C(n,k) - 2^n), j = 0..2n-1
    out = []
    partial = 0
    for j in range(2 * n):
        if j >= n:
            partial += math.comb(n, j - n)
        out.append((-1) ** j * float(partial - 2 ** n))
    return out


def reference_zeta(s, n: int | None = None) -> complex:
    """zeta(s) from the alternating Dirichlet series with binomial-weighted
    (Euler-type) acceleration:

        zeta(s) = -1/(2^n (1 - 2^(1-s))) sum_{j=0}^{2n-1} e_j / (j+1)^s.

    An oracle independent of the incomplete-gamma machinery; validated for
    Re(s) > -2.  For Re(s) < -1/2 the sum cancels badly, so the reflection
    zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s) is used instead.
    At the zeros of 1 - 2^(1-s) off s = 1 the series cannot be normalised
    and a NearZeroDenominatorError is raised.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real <= _REF_MIN_REAL:
        raise DomainError("reference_zeta is validated only for Re(s) > -2")
    if s.real < -0.5:
        if s.imag == 0 and s.real == -2 * round(-s.real / 2):
            return 0j
        h = s / 2
        log_factor = s * LN2 + (s - 1) * _LOG_PI + log_sin_pi(h) + log_gamma(1 - s)
        return cmath.exp(log_factor) * reference_zeta(1 - s, n)
    if n is None:
        # error ~ 8^-n e^(pi |t|/2) (1 + |t|)^(1 + max(0, -sigma)) with margin
        t = abs(s.imag)
        n = int(math.ceil((math.pi * t / 2 + 3 * math.log1p(t) + 45) / math.log(8.0))) + 10
    weights = _borwein_terms(n)
    total = 0j
    for j in reversed(range(2 * n)):
        total += weights[j] * cmath.exp(-s * math.log(j + 1))
    den = -expm1c((1 - s) * LN2)
    if abs(den) < 1e-14:
        raise NearZeroDenominatorError("1 - 2^(1-s) vanishes")
    return -total / (2.0 ** n * den)


def truncation_errors(s, Ks=(1, 2, 3, 4), K_ref: int = 8, tol: float = DEFAULT_TOL) -> list[float]:
    """|xi_basic(s, K) - xi_basic(s, K_ref)| for each K in ``Ks``.

    Formed as the sum of the stored terms K+1..K_ref, which is the same
    quantity without cancelling against the O(1) leading part (the plain
    difference is exactly zero in binary64 once K >= 3).
    """
    ref = xi_basic(s, K_ref, tol)
    out = []
    for K in Ks:
        if not 0 <= K < K_ref:
            raise DomainError("each K must satisfy 0 <= K < K_ref")
        diff = 0j
        for t in reversed(ref.terms[K:]):
            diff += t
        out.append(abs(diff))
    return out


def convergence_slope(s, Ks=(1, 2, 3, 4), K_ref: int = 8, tol: float = DEFAULT_TOL) -> float:
    """Least-squares slope of log|xi_basic(s,K) - xi_basic(s,K_ref)| against K^2."""
    import numpy as np

    errs = truncation_errors(s, Ks, K_ref, tol)
    if min(errs) <= 0:
        raise ArithmeticError("a truncation error is exactly zero; slope undefined")
    x = np.array([k * k for k in Ks], dtype=float)
    return float(np.polyfit(x, np.log(errs), 1)[0])
