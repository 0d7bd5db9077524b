"""Kummer confluent hypergeometric functions M(a; b; z) and U(a; b; z)."""

from __future__ import annotations

import cmath
import math

from zetakit.laguerre import laguerre_recur_batch, laguerre_shifted_batch
from zetakit.numeric import (
    ConvergenceError,
    DomainError,
    PoleError,
    SeriesResult,
    gamma_ratio,
    is_nonpositive_integer,
    pow_principal,
)

DEFAULT_TOL = 1e-14
MAX_TERMS = 100_000
U_INTEGER_B_OFFSET = 1e-6


def kummer_m_series(a, b, z, tol: float = DEFAULT_TOL) -> SeriesResult:
    """M(a; b; z) from its power series.

    Stops once three consecutive terms fall below ``tol`` times the partial
    sum, which guards against early exits during the alternating
    near-cancellation that happens for Re(z) < 0.
    """
    a, b, z = complex(a), complex(b), complex(z)
    if is_nonpositive_integer(b):
        raise PoleError(f"M(a; b; z) has a pole at b = {b.real:g}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    term = 1.0 + 0j
    total = term
    small = 0
    for i in range(MAX_TERMS):
        term *= (a + i) * z / ((b + i) * (i + 1))
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small == 3 or term == 0:
                return SeriesResult(total, i + 2, abs(term))
        else:
            small = 0
    raise ConvergenceError(f"M({a}; {b}; {z}) did not converge in {MAX_TERMS} terms")


def kummer_u(a, b, z, tol: float = DEFAULT_TOL) -> SeriesResult:
    """U(a; b; z) as the two-term combination of M functions,

        Gamma(1-b)/Gamma(1-b+a) M(a; b; z) + Gamma(b-1)/Gamma(a) z^(1-b) M(a-b+1; 2-b; z).

    Requires non-integer b.  For integer b use :func:`kummer_u_integer_b`.
    """
    a, b, z = complex(a), complex(b), complex(z)
    if b.imag == 0.0 and b.real == math.floor(b.real):
        raise DomainError(
            "kummer_u requires non-integer b; use kummer_u_integer_b (b +/- 1e-6 average)"
        )
    first = gamma_ratio(1 - b, 1 - b + a)
    m1 = kummer_m_series(a, b, z, tol)
    value = first * m1.value
    terms = m1.terms_used
    tail = abs(first) * m1.tail_estimate
    if not is_nonpositive_integer(a):
        second = gamma_ratio(b - 1, a) * pow_principal(z, 1 - b)
        m2 = kummer_m_series(a - b + 1, 2 - b, z, tol)
        value += second * m2.value
        terms += m2.terms_used
        tail += abs(second) * m2.tail_estimate
    return SeriesResult(value, terms, tail)


def kummer_u_integer_b(a, b, z, tol: float = DEFAULT_TOL, eps: float = U_INTEGER_B_OFFSET) -> SeriesResult:
    """U at (near-)integer b: mean of U at b + eps and b - eps.

    The symmetric mean removes the O(eps) term; expect roughly 1e-9 relative
    accuracy because the two-term combination cancels near integer b.
    """
    up = kummer_u(a, complex(b) + eps, z, tol)
    down = kummer_u(a, complex(b) - eps, z, tol)
    return SeriesResult(
        0.5 * (up.value + down.value),
        up.terms_used + down.terms_used,
        max(up.tail_estimate, down.tail_estimate, abs(up.value - down.value)),
    )


def kummer_m_laguerre(a, b, z, beta, N: int) -> SeriesResult:
    """M(a; b; z) as a series in L_i^(beta - i)(z), summed for i = 0..N.

    Converges whenever Re(b - a) > 0, with terms decaying like i^-(b-a+1).
    """
    a, b, z, beta = complex(a), complex(b), complex(z), complex(beta)
    if (b - a).real <= 0:
        raise DomainError("Laguerre expansion of M requires Re(b - a) > 0")
    prefactor = gamma_ratio(b, b - a) * gamma_ratio(b - a - beta, b - beta)
    lag = laguerre_shifted_batch(N, beta, z)
    total = 0j
    ratio = 1.0 + 0j
    term = 0j
    used = 0
    for i in range(N + 1):
        if i > 0:
            den = beta - b - i + 1
            if den == 0:
                raise PoleError(f"(beta - b choose {i}) vanishes")
            ratio *= (-a - i + 1) / den
            if ratio == 0:
                break
        term = (-1) ** i * lag[i] * ratio
        total += term
        used = i + 1
    return SeriesResult(prefactor * total, used, abs(prefactor * term))


def kummer_u_laguerre(a, b, z, alpha, N: int) -> SeriesResult:
    """U(a; b; z) as a series in L_i^(alpha)(z), summed for i = 0..N.

    Requires Re(alpha - 2b) > -5/2.  The leading factor is taken as
    Gamma(2 + alpha - b)/Gamma(2 + alpha - b + a).
    """
    a, b, z, alpha = complex(a), complex(b), complex(z), complex(alpha)
    if (alpha - 2 * b).real <= -2.5:
        raise DomainError("Laguerre expansion of U requires Re(alpha - 2b) > -5/2")
    prefactor = gamma_ratio(2 + alpha - b, 2 + alpha - b + a)
    if not (cmath.isfinite(prefactor)):
        raise DomainError("Laguerre expansion of U: leading gamma ratio is not finite")
    lag = laguerre_recur_batch(N, alpha, z)
    c = b - a - alpha - 2
    total = 0j
    ratio = 1.0 + 0j
    term = 0j
    used = 0
    for i in range(N + 1):
        if i > 0:
            den = c - i + 1
            if den == 0:
                raise PoleError(f"(b - a - alpha - 2 choose {i}) vanishes")
            ratio *= (-a - i + 1) / den
            if ratio == 0:
                break
        term = lag[i] * ratio
        total += term
        used = i + 1
    return SeriesResult(prefactor * total, used, abs(prefactor * term))


def exp_laguerre_partial(t, alpha, z, N: int) -> SeriesResult:
    """Partial sum of (1+t)^(-alpha-1) sum_i L_i^(alpha)(z) (t/(1+t))^i, which tends to e^(-tz).

    Converges pointwise for Re(t) > -1/2, including alpha <= -1.
    """
    t, alpha, z = complex(t), complex(alpha), complex(z)
    if t.real <= -0.5:
        raise DomainError("Laguerre series of exp(-tz) requires Re(t) > -1/2")
    lag = laguerre_recur_batch(N, alpha, z)
    q = t / (1 + t)
    total = 0j
    qpow = 1.0 + 0j
    term = 0j
    for i in range(N + 1):
        term = lag[i] * qpow
        total += term
        qpow *= q
    scale = pow_principal(1 + t, -alpha - 1)
    return SeriesResult(scale * total, N + 1, abs(scale * term))
