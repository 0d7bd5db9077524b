"""Complex scalar helpers shared by every other module.

All arithmetic is plain binary64 ``complex``.  Inputs may be anything
``complex()`` accepts.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


class DomainError(ValueError):
    """An argument lies outside the region where an operation is defined."""


class PoleError(DomainError):
    """An argument hits a pole of the function being evaluated."""


class ConvergenceError(ArithmeticError):
    """An iterative evaluation did not reach its tolerance within budget."""


class NearZeroDenominatorError(ArithmeticError):
    """A denominator on the evaluation path vanished (or nearly so)."""


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series plus what it cost and a tail heuristic.

    ``tail_estimate`` is the magnitude of the last included term.
    """

    value: complex
    terms_used: int
    tail_estimate: float

    def __post_init__(self):
        # numpy scalars leak in from batch Laguerre arrays
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "tail_estimate", float(self.tail_estimate))


# Lanczos approximation, g = 7, 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_LOG_HALF = math.log(0.5)


def _as_complex(z) -> complex:
    z = complex(z)
    # normalise -0.0 so the principal branch is taken on the cut
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return z


def is_nonpositive_integer(z) -> bool:
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _log_gamma_lanczos(z: complex) -> complex:
    # valid for Re(z) >= 0.5
    z = z - 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def _log_sin_pi_upper(z: complex) -> complex:
    """log(sin(pi z)) continued analytically through Im(z) >= 0.

    Uses sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}); for Im(z) >= 0 the
    last factor stays in the right half plane, so its principal log is smooth.
    """
    # e^{2 pi i z} only depends on z mod 1; reducing first keeps 1 - w
    # accurate next to the integers, where it is tiny
    f = z - round(z.real)
    return _LOG_HALF + 0.5j * math.pi - 1j * math.pi * z + cmath.log(-expm1c(2j * math.pi * f))


def log_sin_pi(z) -> complex:
    """A logarithm of sin(pi z), continuous in each open half plane.

    Used where sin(pi z) itself would overflow for large |Im z|.
    """
    z = _as_complex(z)
    if z.imag >= 0.0:
        return _log_sin_pi_upper(z)
    return _log_sin_pi_upper(z.conjugate()).conjugate()


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z), cut along the negative real axis.

    Satisfies log_gamma(z + 1) = log_gamma(z) + log(z) off the cut.  On the
    negative real axis the value is the limit from above.
    """
    z = _as_complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"log_gamma has a pole at z = {z.real:g}")
    if z.real >= 0.5:
        return _log_gamma_lanczos(z)
    if z.imag < 0.0:
        return log_gamma(z.conjugate()).conjugate()
    return _LOG_PI - _log_sin_pi_upper(z) - _log_gamma_lanczos(1.0 - z)


def gamma(z) -> complex:
    z = _as_complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at z = {z.real:g}")
    if z.imag == 0.0 and z.real > 0.0 and z.real == math.floor(z.real) and z.real < 171:
        return complex(math.factorial(int(z.real) - 1))
    return cmath.exp(log_gamma(z))


def rgamma(z) -> complex:
    """1/Gamma(z); entire, exactly zero at the poles of Gamma."""
    z = _as_complex(z)
    if is_nonpositive_integer(z):
        return 0j
    return cmath.exp(-log_gamma(z))


def gamma_ratio(x, y) -> complex:
    """Gamma(x)/Gamma(y); zero when y sits on a pole and x does not."""
    x = _as_complex(x)
    y = _as_complex(y)
    if is_nonpositive_integer(x):
        raise PoleError(f"gamma_ratio numerator has a pole at {x.real:g}")
    if is_nonpositive_integer(y):
        return 0j
    return cmath.exp(log_gamma(x) - log_gamma(y))


def binomial_general(a, k: int) -> complex:
    """Generalised binomial (a choose k) = prod_{j=1..k} (a - j + 1)/j.

    Computed as a running product, so it is exact at negative integer ``a``
    where gamma quotients would have poles.
    """
    if k < 0:
        raise DomainError("binomial_general requires k >= 0")
    a = complex(a)
    out = 1.0 + 0j
    for j in range(1, k + 1):
        out *= (a - j + 1) / j
    return out


def binomial_gamma(x, y) -> complex:
    """(x choose y) for complex lower index, via Gamma(x+1)/(Gamma(y+1)Gamma(x-y+1))."""
    x = _as_complex(x)
    y = _as_complex(y)
    return gamma(x + 1.0) * rgamma(y + 1.0) * rgamma(x - y + 1.0)


def pow_principal(z, s) -> complex:
    """z**s = exp(s Log z) with the principal logarithm."""
    z = _as_complex(z)
    s = complex(s)
    if z == 0:
        if s.real > 0:
            return 0j
        raise DomainError("pow_principal(0, s) requires Re(s) > 0")
    return cmath.exp(s * cmath.log(z))


def expm1c(w: complex) -> complex:
    """exp(w) - 1 without cancellation for small |w|."""
    w = complex(w)
    if abs(w) < 1e-5:
        return w * (1.0 + w * (0.5 + w / 6.0))
    if w.imag == 0.0:
        return complex(math.expm1(w.real))
    # e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    x, y = w.real, w.imag
    half = math.sin(0.5 * y)
    return complex(math.expm1(x) * math.cos(y) - 2.0 * half * half, math.exp(x) * math.sin(y))
