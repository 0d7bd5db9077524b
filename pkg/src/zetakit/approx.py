"""Rational approximants of the completed zeta function and their numerator
polynomials.

Every variant replaces the scaled incomplete gammas in the basic
representation by a truncated expansion whose s-dependence is rational.
Clearing denominators gives a polynomial in s; it is built in the variable
u = s - 1/2, where the s <-> 1-s symmetry makes it even.

Variants
--------
laguerre
    Gamma(a, X)/X^a = e^-X sum_k L_k^(alpha)(X) / ((k+1) binom(k+1+alpha-a, k+1))
    with alpha = delta - 1/2, cut after n terms; numerator degree 2n.
upsilon
    The same expansion with alpha = delta inserted into
    Upsilon_1(s) + Upsilon_1(1-s), cut after the index-n term; degree 2n.
cf (experimental)
    Each Gamma(a, z^2 pi)/(z^2 pi)^a, z = 1..z_max, replaced by
    e^-X p_2k(a, X)/q_2k(a, X) from the continued fraction with k = cf_level;
    degree 2 cf_level z_max.  Delta is not used.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from zetakit.laguerre import laguerre_recur_values
from zetakit.numeric import DomainError, PoleError
from zetakit.roots import PolynomialC
from zetakit.zeta import upsilon_factor

MAX_N = 60
MIN_Z_MAX = 3
VARIANTS = ("laguerre", "upsilon", "cf")


@dataclass(frozen=True)
class ApproximantSpec:
    delta: float = 5.0
    n: int = 25
    variant: str = "laguerre"
    z_max: int = 5
    cf_level: int = 6

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError("delta must be positive")
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if self.variant not in VARIANTS:
            raise DomainError(f"variant must be one of {VARIANTS}")
        if self.z_max < MIN_Z_MAX:
            raise DomainError(f"z_max must be >= {MIN_Z_MAX}")
        if self.cf_level < 1:
            raise DomainError("cf_level must be >= 1")

    @property
    def strip(self) -> tuple[float, float]:
        """(lo, hi] for Re(s) on which the series converges uniformly."""
        return (-2 * self.delta - 1, 2 * self.delta)

    @property
    def degree(self) -> int:
        if self.variant == "cf":
            return 2 * self.cf_level * self.z_max
        return 2 * self.n


def working_dps(n: int) -> int:
    """Decimal digits used to build degree-2n numerators.

    The monomial coefficients come out of a cancellation that grows with n
    (about 120 orders of magnitude at n = 25), so construction runs in
    multiprecision and only the final coefficients are rounded to binary64.
    """
    return 40 + 6 * n


def _laguerre_weights_mp(count: int, alpha, nodes) -> list:
    # sum_nodes c e^-X L_k^(alpha)(X) / (k+1), k = 0..count-1, at current mp precision
    total = [mpmath.mpf(0)] * count
    for c, x in nodes:
        vals = laguerre_recur_values(count - 1, alpha, x)
        w = c * mpmath.exp(-x)
        for k in range(count):
            total[k] += w * vals[k]
    return [total[k] / (k + 1) for k in range(count)]


def _laguerre_nodes(z_max: int):
    return [(1, z * z * mpmath.pi) for z in range(1, z_max + 1)]


def _upsilon_nodes(z_max: int):
    # X = j^2 pi / 4 with weights 1, -2, 1 for j = 1, 2, 3 (mod 4); j <= 2 z_max + 1
    weights = {1: 1, 2: -2, 3: 1}
    return [(weights[j % 4], j * j * mpmath.pi / 4) for j in range(1, 2 * z_max + 2) if j % 4]


def _coefficients_mp(spec: ApproximantSpec) -> list:
    if spec.variant == "laguerre":
        return _laguerre_weights_mp(spec.n, mpmath.mpf(spec.delta) - mpmath.mpf(1) / 2,
                                    _laguerre_nodes(spec.z_max))
    if spec.variant == "upsilon":
        return _laguerre_weights_mp(spec.n + 1, mpmath.mpf(spec.delta), _upsilon_nodes(spec.z_max))
    raise DomainError("the cf variant has no Laguerre coefficients")


def approximant_coefficients(spec: ApproximantSpec) -> np.ndarray:
    """a_0 .. a_{n-1} for the laguerre variant, b_0 .. b_n for upsilon."""
    with mpmath.workdps(40):
        return np.array([float(c) for c in _coefficients_mp(spec)])


def _inv_binomial_terms(x: complex, count: int) -> list[complex]:
    # 1/binom(x + k, k + 1) = (k+1)! / prod_{j=0..k} (x + j), k = 0..count-1
    out = []
    prod = 1.0 + 0j
    for k in range(count):
        prod *= (x + k) / (k + 1)
        if prod == 0:
            raise PoleError(f"binomial denominator vanishes at x = {x}")
        out.append(1.0 / prod)
    return out


def approximant_value(spec: ApproximantSpec, s, coeffs=None) -> complex:
    """The approximant to xi(s) = s(s-1) zeta(s) Gamma(s/2) pi^(-s/2)."""
    s = complex(s)
    if spec.variant == "upsilon":
        return upsilon_factor(s) * approximant_raw(spec, s, coeffs)
    return approximant_raw(spec, s, coeffs)


def approximant_raw(spec: ApproximantSpec, s, coeffs=None) -> complex:
    """The rational function whose numerator is :func:`approximant_polynomial`.

    Equal to :func:`approximant_value` except for the upsilon variant, where
    the (2^s - 1)(1 - 2^(1-s)) normalisation is not applied.
    """
    s = complex(s)
    if spec.variant == "cf":
        return _cf_value(spec, s)
    a = approximant_coefficients(spec) if coeffs is None else coeffs
    if spec.variant == "laguerre":
        d = spec.delta
        left = _inv_binomial_terms(s / 2 + d, spec.n)
        right = _inv_binomial_terms((1 - s) / 2 + d, spec.n)
        acc = 0j
        for k in reversed(range(spec.n)):
            acc += a[k] * (left[k] + right[k])
        return complex(1 - s * (1 - s) * acc)
    d = spec.delta
    left = _inv_binomial_terms(1 + d - s / 2, spec.n + 1)
    right = _inv_binomial_terms(1 + d - (1 - s) / 2, spec.n + 1)
    acc = 0j
    for i in reversed(range(spec.n + 1)):
        acc += a[i] * (left[i] + right[i])
    return complex(acc)


def approximant_denominator(spec: ApproximantSpec, s) -> complex:
    """D(s) with approximant_polynomial(s) = approximant_raw(s) * D(s)."""
    s = complex(s)
    if spec.variant == "cf":
        return _cf_denominator(spec, s)
    if spec.variant == "laguerre":
        x, y, m = s / 2 + spec.delta, (1 - s) / 2 + spec.delta, spec.n
    else:
        x, y, m = 1 + spec.delta - s / 2, 1 + spec.delta - (1 - s) / 2, spec.n + 1
    return _binom_product(x, m) * _binom_product(y, m)


def _binom_product(x: complex, m: int) -> complex:
    # binom(x + m - 1, m)
    out = 1.0 + 0j
    for j in range(m):
        out *= (x + j) / (j + 1)
    return out


# polynomials as ascending coefficient lists; plain arithmetic so they work
# for float and mpf alike

def _mul(p: list, q: list) -> list:
    out = [0 * p[0]] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _add_into(acc: list, p: list, scale=1) -> None:
    if len(p) > len(acc):
        acc.extend([0 * p[0]] * (len(p) - len(acc)))
    for i, c in enumerate(p):
        acc[i] += scale * c


def _rising(offset, slope, lo: int, hi: int) -> list:
    # prod_{j=lo}^{hi-1} (offset + j + slope u) / (j + 1), ascending in u
    out = [offset * 0 + 1]
    for j in range(lo, hi):
        out = _mul(out, [(offset + j) / (j + 1), slope / (j + 1)])
    return out


def _finish(coeffs: list, degree: int) -> PolynomialC:
    # odd powers of u vanish by symmetry; set them to exactly zero
    c = [complex(float(v), 0.0) if i % 2 == 0 else 0j for i, v in enumerate(coeffs[: degree + 1])]
    c += [0j] * (degree + 1 - len(c))
    return PolynomialC(tuple(c), center=0.5)


def _check_degree(spec: ApproximantSpec) -> None:
    if spec.variant != "cf" and spec.n > MAX_N:
        raise DomainError(f"n = {spec.n} exceeds the degree cap n <= {MAX_N}")
    if spec.variant == "cf" and spec.degree > 2 * MAX_N:
        raise DomainError(f"degree {spec.degree} exceeds the cap {2 * MAX_N}")


def _pair_sum(weights: list, off, sign: float, m: int) -> tuple[list, list]:
    """sum_i w_i [T_i(u) F(-u) + T_i(-u) F(u)] where F(u) = prod_{j<m}(off + j + sign u/2)/(j+1)
    and T_i keeps only the factors j > i."""
    half = sign * mpmath.mpf(1) / 2
    left_full = _rising(off, half, 0, m)
    right_full = _rising(off, -half, 0, m)
    acc = [mpmath.mpf(0)] * (2 * m + 1)
    for i in range(m):
        tl = _rising(off, half, i + 1, m)
        tr = _rising(off, -half, i + 1, m)
        _add_into(acc, _mul(tl, right_full), weights[i])
        _add_into(acc, _mul(tr, left_full), weights[i])
    return acc, _mul(left_full, right_full)


def approximant_polynomial(spec: ApproximantSpec, dps: int | None = None) -> PolynomialC:
    """Numerator of the approximant, as a polynomial in u = s - 1/2.

    Built by convolving the exact linear factors, so no interpolation nodes
    are involved.  Construction runs at ``dps`` decimal digits, by default
    :func:`working_dps`; ``dps=15`` shows what binary64 construction gives.
    """
    _check_degree(spec)
    if spec.variant == "upsilon":
        return upsilon_approximant_polynomial(spec.n, spec.delta, spec.z_max, dps)
    if spec.variant == "cf":
        return _cf_polynomial(spec, dps)
    n = spec.n
    with mpmath.workdps(dps or working_dps(n)):
        a = _coefficients_mp(spec)
        # s/2 + delta = (delta + 1/4) + u/2, (1-s)/2 + delta = (delta + 1/4) - u/2
        off = mpmath.mpf(spec.delta) + mpmath.mpf(1) / 4
        acc, lead = _pair_sum(a, off, 1.0, n)
        # s(1-s) = 1/4 - u^2
        body = _mul(acc, [mpmath.mpf(1) / 4, mpmath.mpf(0), mpmath.mpf(-1)])
        out = [mpmath.mpf(0)] * (2 * n + 3)
        _add_into(out, lead)
        _add_into(out, body, -1)
        return _finish(out, 2 * n)


def upsilon_approximant_polynomial(k: int, delta: float, z_max: int = 5,
                                   dps: int | None = None) -> PolynomialC:
    """Numerator of the truncated Upsilon_1(s) + Upsilon_1(1-s), degree 2k in u = s - 1/2."""
    if k < 1 or k > MAX_N:
        raise DomainError(f"k must satisfy 1 <= k <= {MAX_N}")
    spec = ApproximantSpec(delta=delta, n=k, variant="upsilon", z_max=z_max)
    with mpmath.workdps(dps or working_dps(k)):
        b = _coefficients_mp(spec)
        # 1 + delta - s/2 = (delta + 3/4) - u/2, and its mirror
        off = mpmath.mpf(delta) + mpmath.mpf(3) / 4
        acc, _ = _pair_sum(b, off, -1.0, k + 1)
        return _finish(acc, 2 * k)


# continued-fraction variant

def _cf_pair(level: int, a_poly: list, x):
    """(p_level, q_level) as polynomials in u for Gamma(a, x), a linear in u."""
    one = x * 0 + 1
    p_prev, p_cur = [one], [0 * one]
    q_prev, q_cur = [0 * one], [one]
    for j in range(1, level + 1):
        if j == 1:
            an, bn = [one], x
        elif j % 2 == 0:
            an, bn = [j * one / 2 - a_poly[0], -a_poly[1]], one
        else:
            an, bn = [(j - 1) * one / 2], x
        p_new = [bn * c for c in p_cur] + [0 * one] * 2
        _add_into(p_new, _mul(an, p_prev))
        q_new = [bn * c for c in q_cur] + [0 * one] * 2
        _add_into(q_new, _mul(an, q_prev))
        p_prev, p_cur = p_cur, p_new[: (j - 1) // 2 + 1]
        q_prev, q_cur = q_cur, q_new[: j // 2 + 1]
        # common rescaling keeps p/q and the magnitudes bounded
        scale = max(abs(c) for c in q_cur)
        p_prev = [c / scale for c in p_prev]
        p_cur = [c / scale for c in p_cur]
        q_prev = [c / scale for c in q_prev]
        q_cur = [c / scale for c in q_cur]
    return p_cur, q_cur


def _cf_terms(spec: ApproximantSpec):
    # s/2 = 1/4 + u/2 and (1-s)/2 = 1/4 - u/2
    out = []
    quarter = mpmath.mpf(1) / 4
    for z in range(1, spec.z_max + 1):
        x = z * z * mpmath.pi
        for slope in (mpmath.mpf(1) / 2, -mpmath.mpf(1) / 2):
            p, q = _cf_pair(2 * spec.cf_level, [quarter, slope], x)
            out.append((mpmath.exp(-x), p, q))
    return out


def _horner(coeffs: list, u: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * u + complex(c)
    return acc


def _cf_value(spec: ApproximantSpec, s: complex) -> complex:
    u = s - 0.5
    acc = 0j
    with mpmath.workdps(30):
        terms = _cf_terms(spec)
    for w, p, q in terms:
        qv = _horner(q, u)
        if qv == 0:
            raise PoleError(f"continued-fraction denominator vanishes at s = {s}")
        acc += float(w) * _horner(p, u) / qv
    return complex(1 - s * (1 - s) * acc)


def _cf_denominator(spec: ApproximantSpec, s: complex) -> complex:
    with mpmath.workdps(30):
        terms = _cf_terms(spec)
    d = 1.0 + 0j
    for _, _, q in terms:
        d *= _horner(q, s - 0.5)
    return d


def _cf_polynomial(spec: ApproximantSpec, dps: int | None = None) -> PolynomialC:
    deg = spec.degree
    with mpmath.workdps(dps or working_dps(deg // 2)):
        terms = _cf_terms(spec)
        qs = [q for _, _, q in terms]
        full = [mpmath.mpf(1)]
        for q in qs:
            full = _mul(full, q)
        acc = [mpmath.mpf(0)] * (deg + 3)
        for idx, (w, p, _) in enumerate(terms):
            part = [w * c for c in p]
            for jdx, q in enumerate(qs):
                if jdx != idx:
                    part = _mul(part, q)
            _add_into(acc, part)
        body = _mul(acc, [mpmath.mpf(1) / 4, mpmath.mpf(0), mpmath.mpf(-1)])
        out = [mpmath.mpf(0)] * (deg + 3)
        _add_into(out, full)
        _add_into(out, body, -1)
        return _finish(out, deg)
