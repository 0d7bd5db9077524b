"""Quick invariant suite behind ``zetakit selftest``.

One check per documented invariant of each module, at reduced grids so the
whole run stays within a few seconds.  Checks report what they measured;
a failing check is reported, never skipped.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from zetakit import approx, incgamma, kummer, laguerre, numeric, roots, zeta


@dataclass(frozen=True)
class Check:
    module: str
    name: str
    run: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    passed: bool
    detail: str


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# numeric

def _binomial_falling():
    worst = 0.0
    for a in (Fraction(149, 4), Fraction(-397, 8), Fraction(100), Fraction(-1, 2)):
        for k in (0, 1, 7, 30, 60):
            exact = Fraction(1)
            for j in range(k):
                exact *= a - j
            got = numeric.binomial_general(float(a), k) * math.factorial(k)
            if exact == 0:
                worst = max(worst, abs(got))
            else:
                worst = max(worst, _rel(got, float(exact)))
    return worst < 1e-13, f"max rel err {worst:.2e}"


def _log_gamma_recurrence():
    worst = 0.0
    for re in (-7.3, -2.5, -0.4, 0.3, 1.7, 6.2, 25.0):
        for im in (-12.0, -1.0, 0.0, 0.5, 9.0):
            z = complex(re, im)
            lhs = numeric.log_gamma(z + 1)
            rhs = numeric.log_gamma(z) + cmath.log(z)
            # equal up to a multiple of 2 pi i when crossing branches
            d = lhs - rhs
            d -= 2j * math.pi * round(d.imag / (2 * math.pi))
            worst = max(worst, abs(d) / max(1.0, abs(lhs)))
    return worst < 1e-12, f"max rel err {worst:.2e}"


def _pow_integer():
    worst = 0.0
    for z in (2.5 + 1j, -0.7 + 0.2j, -3.0 + 0j, 0.1 - 4j):
        for m in (-5, -1, 0, 1, 3, 12):
            ref = 1.0 + 0j
            for _ in range(abs(m)):
                ref *= z
            if m < 0:
                ref = 1 / ref
            worst = max(worst, _rel(numeric.pow_principal(z, m), ref))
    return worst < 1e-13, f"max rel err {worst:.2e}"


# laguerre

def _laguerre_oracle():
    worst = 0.0
    for alpha in (-0.5, 0.0, 1.0, 2.7, 3 + 1j):
        for z in (0.5, 1.0, math.pi, 2 - 1j):
            for i in range(26):
                e = laguerre.laguerre_explicit(i, alpha, z)
                r = laguerre.laguerre_recur(i, alpha, z)
                worst = max(worst, abs(r - e) / (1 + abs(e)))
    return worst < 1e-10, f"max err {worst:.2e}"


def _laguerre_convolution():
    worst = 0.0
    a, b, x, y = 0.7, 1.3 - 0.5j, 1.1, 0.6 + 0.2j
    la = laguerre.laguerre_recur_batch(15, a, x)
    lb = laguerre.laguerre_recur_batch(15, b, y)
    for i in range(16):
        conv = sum(la[i - j] * lb[j] for j in range(i + 1))
        ref = laguerre.laguerre_recur(i, a + b + 1, x + y)
        worst = max(worst, abs(conv - ref) / max(1.0, abs(ref)))
    return worst < 1e-10, f"max rel err {worst:.2e}"


def _laguerre_shifted():
    worst = 0.0
    for beta in (2.5, -1.3, 4 + 1j):
        for z in (0.3, 2.0):
            for i in range(21):
                e = laguerre.laguerre_explicit(i, beta - i, z)
                r = laguerre.laguerre_shifted_recur(i, beta, z)
                worst = max(worst, abs(r - e) / (1 + abs(e)))
    return worst < 1e-10, f"max err {worst:.2e}"


def _laguerre_growth():
    # binom(3, j) vanishes for j > 3, so a non-integer beta is used
    beta, z, j = 3.5, 1.0, 2000
    ratio = laguerre.laguerre_shifted_recur(j, beta, z) / numeric.binomial_general(beta, j)
    err = abs(ratio / math.e - 1)
    return err < 0.02, f"ratio/e - 1 = {err:.2e} (beta=3.5)"


def _laguerre_asymptotic():
    i, alpha, z = 10_000, 0.5, 1.0
    ratio = laguerre.laguerre_recur(i, alpha, -z) / laguerre.laguerre_asymptotic(i, alpha, z, sign="-")
    err = abs(ratio - 1)
    return err < 0.05, f"|ratio - 1| = {err:.2e}"


# kummer

def _kummer_transformation():
    worst = 0.0
    for a in (-2.5, 0.5, 3.0):
        for b in (0.7, 2.5, -1.5):
            for z in (-4.0, 1.5, 3 + 2j):
                m = kummer.kummer_m_series(a, b, z).value
                t = cmath.exp(z) * kummer.kummer_m_series(b - a, b, -z).value
                worst = max(worst, _rel(t, m))
    return worst < 1e-10, f"max rel err {worst:.2e}"


def _kummer_u_reflection():
    worst = 0.0
    for a in (0.5, 1.0, 2.3):
        for b in (0.3, 1.6, -0.4):
            for z in (0.8, 2.5, 1 + 1j):
                u = kummer.kummer_u(a, b, z).value
                r = numeric.pow_principal(z, 1 - b) * kummer.kummer_u(1 + a - b, 2 - b, z).value
                worst = max(worst, _rel(r, u))
    return worst < 1e-9, f"max rel err {worst:.2e}"


def _kummer_laguerre_agreement():
    m_ser = kummer.kummer_m_series(1.5, 3.5, 0.8).value
    m_lag = kummer.kummer_m_laguerre(1.5, 3.5, 0.8, 0.0, 60).value
    u_ref = kummer.kummer_u(1.0, 0.3, 1.7).value
    u_lag = kummer.kummer_u_laguerre(1.0, 0.3, 1.7, 2.0, 1000).value
    e1, e2 = _rel(m_lag, m_ser), _rel(u_lag, u_ref)
    return e1 < 1e-10 and e2 < 1e-7, f"M rel err {e1:.2e}, U rel err {e2:.2e} (N=1000)"


def _kummer_polynomial_collapse():
    worst = 0.0
    for i in (1, 4, 9):
        for b in (0.5, 2.25):
            for z in (0.7, -2.0):
                m = kummer.kummer_m_series(-i, b, z).value
                ref = laguerre.laguerre_explicit(i, b - 1, z) / numeric.binomial_general(i + b - 1, i)
                worst = max(worst, _rel(m, ref))
    return worst < 1e-12, f"max rel err {worst:.2e}"


# incgamma

def _complementarity():
    worst = 0.0
    for s in (0.2, 1.5, 4 + 2j, 0.5 - 3j, 9.5):
        for z in (0.5, 2.0, 3 + 1j, 7.0):
            lo = incgamma.lower_gamma_series(s, z).value
            up = incgamma.upper_gamma_cf(s, z).value
            full = cmath.exp(numeric.log_gamma(s))
            worst = max(worst, _rel(lo + up, full))
    return worst < 1e-11, f"max rel err {worst:.2e}"


def _closed_q():
    worst = 0.0
    for s, z in ((0.4, 2.0), (1.5 + 2j, 0.7 + 0.3j), (-2.2, 5.0)):
        pairs = incgamma.convergent_pairs(s, z, 81)
        for k in range(41):
            even, odd = incgamma.convergent_q_closed(k, s, z)
            worst = max(worst, _rel(even, pairs[2 * k].q), _rel(odd, pairs[2 * k + 1].q))
    return worst < 1e-12, f"max rel err {worst:.2e}"


def _convergent_sum():
    worst = 0.0
    for s, z in ((0.4, 2.0), (1.5 + 2j, 0.7 + 0.3j)):
        pairs = incgamma.convergent_pairs(s, z, 41)
        for k in (1, 5, 20):
            got = incgamma.upper_gamma_convergent_sum(s, z, k, parity="odd")
            worst = max(worst, _rel(got, pairs[2 * k + 1].ratio()))
    return worst < 1e-12, f"max rel err {worst:.2e}"


def _four_paths():
    # sum and limit converge like exp(-4 sqrt(kz)); the Laguerre series
    # only algebraically, with tail ~ N^(Re s - alpha/2 - 1/4)
    worst_fast, worst_ratio = 0.0, 0.0
    n = 1000
    for s, z in ((0.4, 2.0), (2.5 + 1j, 3.0), (-0.7, math.pi)):
        ref = incgamma.upper_gamma(s, z, method="cf").value
        for method in ("sum", "limit"):
            got = incgamma.upper_gamma(s, z, method=method, k=60).value
            worst_fast = max(worst_fast, _rel(got, ref))
        alpha = float(max(0, math.floor(2 * (complex(s).real - 0.25)) + 3))
        got = incgamma.upper_gamma(s, z, method="series", k=n, alpha=alpha).value
        bound = n ** (complex(s).real - alpha / 2 - 0.25)
        worst_ratio = max(worst_ratio, _rel(got, ref) / bound)
    ok = worst_fast < 1e-12 and worst_ratio < 1.0
    return ok, f"sum/limit vs cf {worst_fast:.2e}, series err / rate bound {worst_ratio:.2e}"


# zeta

def _truncation_decay():
    lo, hi = -1.2 * math.pi, -0.8 * math.pi
    slopes = [zeta.convergence_slope(s) for s in (3.0, 0.5 + 10j)]
    decreasing = all(
        all(a > b for a, b in zip(e, e[1:])) for e in (zeta.truncation_errors(s) for s in (3.0, 0.5 + 10j))
    )
    ok = decreasing and all(lo <= m <= hi for m in slopes)
    return ok, "slopes/pi " + ", ".join(f"{m / math.pi:.3f}" for m in slopes) + f", decreasing={decreasing}"


def _grid():
    for i in range(7):
        for j in range(7):
            s = complex(-1 + 4 * i / 6, 30 * j / 6)
            if s != 1:
                yield s


def _funceq():
    worst = max(abs(zeta.xi_basic(s).xi - zeta.xi_basic(1 - s).xi) for s in _grid())
    return worst < 1e-13, f"max |xi(s) - xi(1-s)| {worst:.2e}"


def _xindep():
    worst = 0.0
    for s in _grid():
        base = zeta.xi_basic(s, 6).xi
        for x in (1.05, 1.2, 1.3 + 0.2j):
            worst = max(worst, abs(zeta.xi_general(s, x, 6).xi - base))
    return worst < 1e-9, f"max diff {worst:.2e}"


def _upsilon_agreement():
    worst = 0.0
    for s in _grid():
        try:
            worst = max(worst, abs(zeta.xi_upsilon(s).xi - zeta.xi_basic(s).xi))
        except numeric.NearZeroDenominatorError:
            continue
    return worst < 1e-8, f"max diff {worst:.2e}"


def _oracle():
    worst = max(_rel(zeta.zeta_value(s, "basic", 5), zeta.reference_zeta(s)) for s in _grid())
    return worst < 1e-10, f"max rel err {worst:.2e}"


# approx-zeros

def _degree_law():
    bad = []
    for delta in (1.0, 2.5, 5.0):
        for n in (1, 2, 9, 25, 40):
            p = approx.approximant_polynomial(approx.ApproximantSpec(delta, n))
            if p.degree != 2 * n:
                bad.append((delta, n, p.degree))
    return not bad, "all 2n" if not bad else f"mismatch {bad}"


def _root_symmetry():
    rs = roots.find_roots(approx.approximant_polynomial(approx.ApproximantSpec(5.0, 25)))
    pool = list(rs.roots)
    worst = 0.0
    for r in rs.roots:
        worst = max(worst, min(abs((1 - r) - q) for q in pool) / max(1.0, abs(r)))
        worst = max(worst, min(abs(r.conjugate() - q) for q in pool) / max(1.0, abs(r)))
    return worst < 1e-8, f"max pairing gap {worst:.2e}"


def hurwitz_distances(ns=(10, 15, 20, 25), delta: float = 5.0, target: complex = 0.5 + 14.134725j):
    out = []
    for n in ns:
        rs = roots.find_roots(approx.approximant_polynomial(approx.ApproximantSpec(delta, n)))
        out.append(min(abs(r - target) for r in rs.roots))
    return out


def _hurwitz():
    d = hurwitz_distances()
    ok = all(a > b for a, b in zip(d, d[1:]))
    return ok, "distances " + ", ".join(f"{v:.4f}" for v in d)


def in_strip_offenders(delta: float = 5.0, n: int = 25, tau: float = 0.05):
    rs = roots.find_roots(approx.approximant_polynomial(approx.ApproximantSpec(delta, n)))
    lo, hi = -2 * delta - 1, 2 * delta
    return [r for r in rs.roots if lo < r.real <= hi and 2 < abs(r.imag) < 30 and abs(r.real - 0.5) >= tau]


def _in_strip():
    bad = in_strip_offenders()
    return not bad, "none off line" if not bad else "off line: " + ", ".join(f"{r.real:.4f}{r.imag:+.4f}i" for r in bad)


# cli

def _round_trip():
    from zetakit.cli import format_float

    vals = [zeta.zeta_value(0.5 + 14.134725j).real, math.pi, 1e-310, -2.5e300, 0.1]
    ok = all(float(format_float(v)) == v for v in vals)
    return ok, "shortest repr parses back exactly" if ok else "round-trip mismatch"


CHECKS = (
    Check("numeric", "binomial vs falling factorial", _binomial_falling),
    Check("numeric", "log_gamma recurrence", _log_gamma_recurrence),
    Check("numeric", "pow_principal integer powers", _pow_integer),
    Check("laguerre", "recursion vs explicit", _laguerre_oracle),
    Check("laguerre", "convolution identity", _laguerre_convolution),
    Check("laguerre", "shifted-order consistency", _laguerre_shifted),
    Check("laguerre", "growth law j=2000", _laguerre_growth),
    Check("laguerre", "asymptotic ratio (-z) i=1e4", _laguerre_asymptotic),
    Check("kummer", "Kummer transformation", _kummer_transformation),
    Check("kummer", "U reflection", _kummer_u_reflection),
    Check("kummer", "Laguerre expansions agree", _kummer_laguerre_agreement),
    Check("kummer", "polynomial collapse a=-i", _kummer_polynomial_collapse),
    Check("incgamma", "gamma + Gamma = Gamma(s)", _complementarity),
    Check("incgamma", "closed-form q_k", _closed_q),
    Check("incgamma", "convergent sum vs recursion", _convergent_sum),
    Check("incgamma", "four upper-gamma paths agree", _four_paths),
    Check("zeta", "truncation decay slope", _truncation_decay),
    Check("zeta", "functional-equation symmetry", _funceq),
    Check("zeta", "x-independence", _xindep),
    Check("zeta", "upsilon agreement", _upsilon_agreement),
    Check("zeta", "oracle agreement 7x7 grid", _oracle),
    Check("approx", "degree law", _degree_law),
    Check("approx", "root symmetry s -> 1-s", _root_symmetry),
    Check("approx", "Hurwitz trend", _hurwitz),
    Check("approx", "in-strip roots on line", _in_strip),
    Check("cli", "round-trip float output", _round_trip),
)


def run_all(checks=CHECKS) -> list[CheckResult]:
    out = []
    for c in checks:
        try:
            ok, detail = c.run()
        except Exception as exc:  # a crash is a failed check, with its reason
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(c.module, c.name, bool(ok), detail))
    return out
