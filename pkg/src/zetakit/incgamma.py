"""Lower and upper incomplete gamma functions.

Besides the usual series for the lower function, the upper function has
four routes that must agree:

* the Gauss continued fraction, run through its numerator/denominator
  recursion (``upper_gamma_cf``);
* the telescoped convergent sum whose denominators are Laguerre values at
  -z (``upper_gamma_convergent_sum``);
* the closed Laguerre quotient for the k-th convergent
  (``upper_gamma_laguerre_limit``);
* the Laguerre series at +z (``upper_gamma_laguerre_series``).

The continued-fraction routes work with the scaled value
Gamma(s, z) / (z^s e^-z), which is what the zeta series consume.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from zetakit.kummer import kummer_m_series
from zetakit.laguerre import laguerre_recur, laguerre_recur_batch
from zetakit.numeric import (
    ConvergenceError,
    DomainError,
    NearZeroDenominatorError,
    PoleError,
    SeriesResult,
    binomial_general,
    is_nonpositive_integer,
    log_gamma,
    pow_principal,
)

DEFAULT_TOL = 1e-14
CF_MAX_LEVELS = 10_000
RESCALE_EVERY = 50
NEAR_ZERO = 1e-280
LOWER_CANCELLATION_WARN = 30.0


@dataclass(frozen=True)
class ConvergentPair:
    """Numerator and denominator of the k-th continued-fraction convergent."""

    p: complex
    q: complex
    k: int

    def ratio(self) -> complex | None:
        """p/q, or None when q is zero."""
        if self.q == 0:
            return None
        return self.p / self.q


def _partial(k: int, s: complex, z: complex) -> tuple[complex, complex]:
    # (a_k, b_k) of Gamma(s,z) = z^s e^-z / (z + (1-s)/(1 + 1/(z + (2-s)/(1 + ...))))
    if k == 1:
        return 1.0, z
    if k % 2 == 0:
        return k // 2 - s, 1.0
    return (k - 1) // 2, z


def convergent_pairs(s, z, kmax: int) -> list[ConvergentPair]:
    """Raw (unscaled) convergents p_k/q_k for k = 0..kmax.

    This is the plain recursion with no rescaling, kept as an oracle for the
    closed forms; use :func:`upper_gamma_cf` for evaluation.
    """
    s, z = complex(s), complex(z)
    p_prev, q_prev = 1.0 + 0j, 0j  # p_{-1}, q_{-1}
    p, q = 0j, 1.0 + 0j  # p_0, q_0
    out = [ConvergentPair(p, q, 0)]
    for k in range(1, kmax + 1):
        a, b = _partial(k, s, z)
        p_prev, p = p, a * p_prev + b * p
        q_prev, q = q, a * q_prev + b * q
        out.append(ConvergentPair(p, q, k))
    return out


def upper_gamma_cf_scaled(s, z, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Gamma(s, z) / (z^s e^-z) from the continued fraction.

    (p_k, q_k) are rescaled to unit max-magnitude every 50 levels so only
    their ratio carries meaning.  Accuracy degrades for |z| much smaller
    than Re(s); :func:`upper_gamma_cf` avoids that region.  Stops when two successive convergent
    ratios differ by less than ``tol`` relative, twice in a row.
    """
    s, z = complex(s), complex(z)
    if z.real <= 0:
        raise DomainError("continued fraction for Gamma(s, z) requires Re(z) > 0")
    p_prev, q_prev = 1.0 + 0j, 0j
    p, q = 0j, 1.0 + 0j
    last = None
    hits = 0
    for k in range(1, CF_MAX_LEVELS + 1):
        a, b = _partial(k, s, z)
        p_prev, p = p, a * p_prev + b * p
        q_prev, q = q, a * q_prev + b * q
        if k % RESCALE_EVERY == 0:
            scale = max(abs(p), abs(q), abs(p_prev), abs(q_prev))
            if scale > 0:
                p, q, p_prev, q_prev = p / scale, q / scale, p_prev / scale, q_prev / scale
        if q == 0:
            last = None
            hits = 0
            continue
        r = p / q
        if last is not None:
            delta = abs(r - last)
            if delta <= tol * abs(r):
                hits += 1
                if hits == 2:
                    return SeriesResult(r, k, delta)
            else:
                hits = 0
        last = r
    raise ConvergenceError(f"continued fraction for Gamma({s}, {z}) did not converge")


def upper_gamma_cf(s, z, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Gamma(s, z) for Re(z) > 0 via the continued fraction.

    When |z| < Re(s) - 1 the forward convergents cancel catastrophically
    (for integer s the fraction terminates on a denominator that is a tiny
    difference), so there the value is taken as Gamma(s) - gamma(s, z),
    which loses at most about a factor 2 because gamma(s, z) stays below
    Gamma(s)/2.
    """
    s, z = complex(s), complex(z)
    if z.real <= 0:
        raise DomainError("continued fraction for Gamma(s, z) requires Re(z) > 0")
    if s.real > 1 and abs(z) < s.real - 1:
        low = lower_gamma_series(s, z, tol)
        full = cmath.exp(log_gamma(s))
        return SeriesResult(full - low.value, low.terms_used, low.tail_estimate)
    res = upper_gamma_cf_scaled(s, z, tol)
    scale = cmath.exp(s * cmath.log(z) - z)
    return SeriesResult(scale * res.value, res.terms_used, abs(scale) * res.tail_estimate)


def lower_gamma_series(s, z, tol: float = DEFAULT_TOL) -> SeriesResult:
    """gamma(s, z) = z^s/s * M(s; s+1; -z).

    For Re(z) >= 0 the equivalent form z^s/s e^-z M(1; s+1; z) is summed
    instead.  Either way the terms share one sign for real z; for
    |z| > 30 with |Im z| > |Re z| the partial sums cancel heavily and a
    RuntimeWarning is issued.
    """
    s, z = complex(s), complex(z)
    if is_nonpositive_integer(s):
        raise PoleError(f"lower incomplete gamma has a pole at s = {s.real:g}")
    if z == 0:
        if s.real > 0:
            return SeriesResult(0j, 0, 0.0)
        raise DomainError("gamma(s, 0) requires Re(s) > 0")
    if abs(z) > LOWER_CANCELLATION_WARN and abs(z.imag) > abs(z.real):
        warnings.warn(
            f"lower_gamma_series at |z| = {abs(z):.3g} loses accuracy; use Gamma(s) - Gamma(s, z)",
            RuntimeWarning,
            stacklevel=2,
        )
    lead = pow_principal(z, s) / s
    if z.real >= 0:
        m = kummer_m_series(1.0, s + 1, z, tol)
        lead *= cmath.exp(-z)
    else:
        m = kummer_m_series(s, s + 1, -z, tol)
    return SeriesResult(lead * m.value, m.terms_used, abs(lead) * m.tail_estimate)


def convergent_q_closed(k: int, s, z) -> tuple[complex, complex]:
    """(q_{2k}, q_{2k+1}) = (k! L_k^(-s)(-z), k! z L_k^(1-s)(-z))."""
    if k < 0:
        raise DomainError("convergent level must be >= 0")
    s, z = complex(s), complex(z)
    fact = float(math.factorial(k)) if k <= 170 else math.inf
    even = fact * laguerre_recur(k, -s, -z)
    odd = fact * z * laguerre_recur(k, 1 - s, -z)
    if not (cmath.isfinite(even) and cmath.isfinite(odd)):
        raise OverflowError(f"closed-form convergent denominators overflow at level {k}")
    return even, odd


def upper_gamma_convergent_sum(s, z, k: int, parity: str = "odd") -> complex:
    """k-th odd (or even) convergent of the continued fraction, written as a
    telescoped sum over products of neighbouring Laguerre values at -z.

    odd:  1/z - (1/z) sum_{i=1..k} (i-s choose i) / (L_{i-1}^(1-s)(-z) L_i^(1-s)(-z))
    even: sum_{i=0..k-1} (i-s choose i) / ((i+1) L_i^(-s)(-z) L_{i+1}^(-s)(-z))

    Both tend to Gamma(s, z) / (z^s e^-z) for Re(z) > 0.
    """
    s, z = complex(s), complex(z)
    if z.real <= 0:
        raise DomainError("convergent sum for Gamma(s, z) requires Re(z) > 0")
    if k < 0:
        raise DomainError("convergent level must be >= 0")
    if parity not in ("odd", "even"):
        raise DomainError("parity must be 'odd' or 'even'")
    order = 1 - s if parity == "odd" else -s
    lag = laguerre_recur_batch(k + 1, order, -z)
    scale = 1.0
    for value in lag:
        scale = max(scale, abs(value))
        if abs(value) < NEAR_ZERO * scale:
            raise NearZeroDenominatorError(
                f"Laguerre denominator vanishes on the convergent path for s={s}, z={z}"
            )
    binom = 1.0 + 0j  # (i - s choose i)
    if parity == "odd":
        total = 0j
        for i in range(1, k + 1):
            binom *= (i - s) / i
            total += binom / (lag[i - 1] * lag[i])
        return complex((1.0 - total) / z)
    total = 0j
    for i in range(k):
        if i > 0:
            binom *= (i - s) / i
        total += binom / ((i + 1) * lag[i] * lag[i + 1])
    return complex(total)


def upper_gamma_laguerre_limit(s, z, k: int, variant: str = "even") -> complex:
    """Closed Laguerre quotient for the 2k-th ("even") or (2k+1)-th ("odd")
    convergent of Gamma(s, z) / (z^s e^-z).

    The error decays like exp(-4 sqrt(k z)) / sqrt(k z) for Re(z) > 0.
    """
    s, z = complex(s), complex(z)
    if z == 0:
        raise DomainError("Laguerre limit for Gamma(s, z) requires z != 0")
    if k < 1:
        raise DomainError("Laguerre limit for Gamma(s, z) requires k >= 1")
    if variant not in ("even", "odd"):
        raise DomainError("variant must be 'even' or 'odd'")
    top = (k + 1) // 2
    num = 0j
    if variant == "even":
        for i in range(1, top + 1):
            weight = binomial_general(s - 1, i - 1) / binomial_general(k - 1, i - 1)
            num += laguerre_recur(k - 2 * i + 1, 2 * i - s, -z) * weight
        den = k * laguerre_recur(k, -s, -z)
        if den == 0:
            raise NearZeroDenominatorError("k L_k^(-s)(-z) vanishes")
        return num / den
    for i in range(1, top + 1):
        weight = binomial_general(s - 1, i) / binomial_general(k, i)
        num += laguerre_recur(k - 2 * i + 1, 2 * i + 1 - s, -z) * weight
    den = z * laguerre_recur(k, 1 - s, -z)
    if den == 0:
        raise NearZeroDenominatorError("z L_k^(1-s)(-z) vanishes")
    return 1.0 / z + num / den


def upper_gamma_laguerre_series(s, z, alpha, N: int) -> SeriesResult:
    """Gamma(s, z) = z^s e^-z sum_k L_k^(alpha)(z) / ((k+1) (k+1+alpha-s choose k+1)), k = 0..N.

    Requires Re(s - alpha/2) < 1/4.
    """
    s, z, alpha = complex(s), complex(z), complex(alpha)
    if (s - alpha / 2).real >= 0.25:
        raise DomainError("Laguerre series for Gamma(s, z) requires Re(s - alpha/2) < 1/4")
    lag = laguerre_recur_batch(N, alpha, z)
    binom = 1.0 + 0j  # (k+1+alpha-s choose k+1)
    total = 0j
    term = 0j
    for k in range(N + 1):
        binom *= (alpha - s + k + 1) / (k + 1)
        if binom == 0:
            raise PoleError(f"(k+1+alpha-s choose k+1) vanishes at k = {k}")
        term = lag[k] / ((k + 1) * binom)
        total += term
    scale = cmath.exp(s * cmath.log(z) - z)
    return SeriesResult(scale * total, N + 1, abs(scale * term))


def upper_gamma(s, z, method: str = "cf", k: int | None = None, alpha=None,
                tol: float = DEFAULT_TOL) -> SeriesResult:
    """Gamma(s, z) by any of the four routes; ``k`` is the level/term count."""
    s, z = complex(s), complex(z)
    if method == "cf":
        return upper_gamma_cf(s, z, tol)
    scale = cmath.exp(s * cmath.log(z) - z)
    if method in ("sum", "limit"):
        level = 40 if k is None else k
        if method == "sum":
            value = upper_gamma_convergent_sum(s, z, level)
            prev = upper_gamma_convergent_sum(s, z, level - 1) if level > 0 else value
        else:
            value = upper_gamma_laguerre_limit(s, z, level)
            prev = upper_gamma_laguerre_limit(s, z, level - 1) if level > 1 else value
        # tail estimate: size of the last step
        return SeriesResult(scale * value, level, abs(scale * (value - prev)))
    if method == "series":
        if alpha is None:
            # smallest integer order meeting the convergence condition, plus margin
            alpha = float(max(0, math.floor(2 * (s.real - 0.25)) + 3))
        return upper_gamma_laguerre_series(s, z, alpha, 400 if k is None else k)
    raise DomainError(f"unknown method {method!r}")
