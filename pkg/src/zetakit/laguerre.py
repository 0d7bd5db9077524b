"""Generalised Laguerre polynomials L_i^(alpha)(z).

The three-term recursions are the evaluation path.  The explicit sum is
kept as a low-degree oracle only: it loses accuracy quickly as the degree
grows, so it is capped at degree 40.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from zetakit.numeric import DomainError, binomial_general

EXPLICIT_MAX_DEGREE = 40


def laguerre_explicit(i: int, alpha, z) -> complex:
    """sum_{j=0..i} (-1)^j (i+alpha choose i-j) z^j / j!"""
    if i < 0:
        raise DomainError("Laguerre degree must be >= 0")
    if i > EXPLICIT_MAX_DEGREE:
        raise DomainError(
            f"explicit Laguerre sum is capped at degree {EXPLICIT_MAX_DEGREE}; use laguerre_recur"
        )
    alpha = complex(alpha)
    z = complex(z)
    total = 0j
    zpow = 1.0 + 0j
    for j in range(i + 1):
        total += (-1) ** j * binomial_general(i + alpha, i - j) * zpow / math.factorial(j)
        zpow *= z
    return total


def laguerre_recur(i: int, alpha, z) -> complex:
    """L_i^(alpha)(z) by the forward three-term recursion in the degree.

    For alpha = -m, a negative integer, and i >= m the recursion runs
    through the small value L_m^(-m)(z) = (-z)^m/m! and loses digits, so
    the exact reduction L_i^(-m)(z) = (-z)^m (i-m)!/i! L_{i-m}^(m)(z) is
    used instead.
    """
    if i < 0:
        raise DomainError("Laguerre degree must be >= 0")
    alpha = complex(alpha)
    z = complex(z)
    m = -int(alpha.real)
    if alpha.imag == 0 and alpha.real == -m and 1 <= m <= i:
        scale = (-z) ** m
        for j in range(i - m + 1, i + 1):
            scale /= j
        return scale * laguerre_recur(i - m, m, z)
    prev, cur = 0j, 1.0 + 0j
    for j in range(1, i + 1):
        prev, cur = cur, ((2 * j + alpha - 1 - z) * cur - (j + alpha - 1) * prev) / j
    return cur


def laguerre_recur_batch(n: int, alpha, z, out: np.ndarray | None = None) -> np.ndarray:
    """L_0^(alpha)(z), ..., L_n^(alpha)(z) in one pass."""
    if n < 0:
        raise DomainError("Laguerre degree must be >= 0")
    alpha = complex(alpha)
    z = complex(z)
    if out is None:
        out = np.empty(n + 1, dtype=complex)
    prev, cur = 0j, 1.0 + 0j
    out[0] = cur
    for j in range(1, n + 1):
        prev, cur = cur, ((2 * j + alpha - 1 - z) * cur - (j + alpha - 1) * prev) / j
        out[j] = cur
    return out


def laguerre_recur_values(n: int, alpha, z) -> list:
    """L_0 .. L_n by the same recursion, without coercing to complex.

    Works for any number type closed under + - * / (float, mpmath mpf, ...).
    """
    if n < 0:
        raise DomainError("Laguerre degree must be >= 0")
    prev, cur = 0 * z, 1 + 0 * z
    out = [cur]
    for j in range(1, n + 1):
        prev, cur = cur, ((2 * j + alpha - 1 - z) * cur - (j + alpha - 1) * prev) / j
        out.append(cur)
    return out


def laguerre_shifted_recur(i: int, beta, z) -> complex:
    """L_i^(beta - i)(z): the order drops by one with every degree."""
    if i < 0:
        raise DomainError("Laguerre degree must be >= 0")
    beta = complex(beta)
    z = complex(z)
    prev, cur = 0j, 1.0 + 0j
    for j in range(1, i + 1):
        prev, cur = cur, ((beta + 1 - j - z) * cur - z * prev) / j
    return cur


def laguerre_shifted_batch(n: int, beta, z, out: np.ndarray | None = None) -> np.ndarray:
    """L_j^(beta - j)(z) for j = 0..n."""
    if n < 0:
        raise DomainError("Laguerre degree must be >= 0")
    beta = complex(beta)
    z = complex(z)
    if out is None:
        out = np.empty(n + 1, dtype=complex)
    prev, cur = 0j, 1.0 + 0j
    out[0] = cur
    for j in range(1, n + 1):
        prev, cur = cur, ((beta + 1 - j - z) * cur - z * prev) / j
        out[j] = cur
    return out


def laguerre_asymptotic(i: int, alpha, z, sign: str = "+") -> complex:
    """Leading-order large-degree estimate of L_i^(alpha)(+z) or L_i^(alpha)(-z).

    For ``sign="+"`` this is the oscillatory form

        i^(alpha/2 - 1/4)/sqrt(pi) * e^(z/2) / z^(alpha/2 + 1/4)
            * cos(2 sqrt(z (i + (alpha+1)/2)) - pi/2 (alpha + 1/2))

    and for ``sign="-"`` the exponentially growing estimate of L_i^(alpha)(-z),

        i^(alpha/2 - 1/4)/(2 sqrt(pi)) * e^(-z/2) / z^(alpha/2 + 1/4)
            * exp(2 sqrt(z (i + (alpha+1)/2)))

    The factor 1/2 in the second form is required for the ratio to tend to 1
    (it is the classical Perron asymptotic).  Requires Re(z) > 0.
    """
    alpha = complex(alpha)
    z = complex(z)
    if z.real <= 0:
        raise DomainError("Laguerre asymptotics require Re(z) > 0")
    if i < 1:
        raise DomainError("Laguerre asymptotics require degree >= 1")
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    envelope = cmath.exp((alpha / 2 - 0.25) * math.log(i)) / math.sqrt(math.pi)
    zpow = cmath.exp(-(alpha / 2 + 0.25) * cmath.log(z))
    root = 2.0 * cmath.sqrt(z * (i + (alpha + 1) / 2))
    if sign == "+":
        return envelope * cmath.exp(z / 2) * zpow * cmath.cos(root - math.pi / 2 * (alpha + 0.5))
    return 0.5 * envelope * zpow * cmath.exp(root - z / 2)
