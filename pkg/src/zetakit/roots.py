"""Polynomials, simultaneous root finding and root bookkeeping."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from zetakit.numeric import DomainError

TRIM_RELATIVE = 1e-300
MAX_SWEEPS = 500
DEFAULT_TAU = 0.05

ON_LINE = "on-critical-line"
OFF_LINE = "off-line"
OUTSIDE = "outside-strip"
PREFACTOR = "prefactor-zero"
LABELS = (ON_LINE, OFF_LINE, OUTSIDE, PREFACTOR)


@dataclass(frozen=True)
class PolynomialC:
    """sum_j coefficients[j] * (s - center)^j, ascending degree.

    Coefficients below 1e-300 of the largest are trimmed from the top so the
    leading coefficient is always meaningful.
    """

    coefficients: tuple[complex, ...]
    center: complex = 0j

    def __post_init__(self):
        c = [complex(v) for v in self.coefficients]
        if not c:
            raise DomainError("a polynomial needs at least one coefficient")
        scale = max(abs(v) for v in c)
        while len(c) > 1 and abs(c[-1]) <= TRIM_RELATIVE * scale:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))
        object.__setattr__(self, "center", complex(self.center))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, s) -> complex:
        u = complex(s) - self.center
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * u + c
        return acc

    def is_even(self, rel: float = 0.0) -> bool:
        scale = max(abs(c) for c in self.coefficients)
        return all(abs(c) <= rel * scale for c in self.coefficients[1::2])


@dataclass(frozen=True)
class RootSet:
    roots: tuple[complex, ...]
    labels: tuple[str, ...] = ()
    tau: float = DEFAULT_TAU
    converged: bool = True
    sweeps: int = 0
    residuals: tuple[float, ...] = field(default=(), compare=False)

    def count(self, label: str) -> int:
        return sum(1 for lab in self.labels if lab == label)

    def counts(self) -> dict[str, int]:
        return {lab: self.count(lab) for lab in LABELS}


def _perturbed_circle(coeffs: np.ndarray, seed: int) -> np.ndarray:
    n = len(coeffs) - 1
    # radius from the geometric mean of the roots, angles slightly randomised
    radius = abs(coeffs[0] / coeffs[-1]) ** (1.0 / n) if coeffs[0] != 0 else 1.0
    if not np.isfinite(radius) or radius == 0:
        radius = 1.0
    rng = np.random.default_rng(seed)
    angles = 2 * np.pi * (np.arange(n) + 0.25) / n + 0.4 + 0.1 * rng.standard_normal(n)
    radii = radius * (1 + 0.05 * rng.standard_normal(n))
    return radii * np.exp(1j * angles)


def _horner_with_derivative(desc: np.ndarray, z: np.ndarray):
    p = np.full_like(z, desc[0])
    dp = np.zeros_like(z)
    for c in desc[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _abs_horner(desc_abs: np.ndarray, az: float) -> float:
    acc = desc_abs[0]
    for c in desc_abs[1:]:
        acc = acc * az + c
    return acc


def _newton_ratio(desc: np.ndarray, asc: np.ndarray, desc_abs, asc_abs, z: complex):
    """(p(z)/p'(z), |p(z)|/rounding bound), overflow-free for large |z|.

    For |z| > 1 the reversed polynomial q(y) = y^n p(1/y) is used:
    p/p' = z q / (n q - y q').
    """
    n = len(desc) - 1
    if abs(z) <= 1:
        p, dp = _horner_with_derivative(desc, np.array([z]))
        p, dp = complex(p[0]), complex(dp[0])
        bound = _abs_horner(desc_abs, abs(z))
        ratio = p / dp if dp != 0 else p
        return ratio, (abs(p) / bound if bound else 0.0)
    y = 1 / z
    q, dq = _horner_with_derivative(asc, np.array([y]))
    q, dq = complex(q[0]), complex(dq[0])
    bound = _abs_horner(asc_abs, abs(y))
    den = n * q - y * dq
    ratio = z * q / den if den != 0 else q
    return ratio, (abs(q) / bound if bound else 0.0)


def aberth(coeffs_asc, tol: float = 1e-14, seed: int = 0, max_sweeps: int = MAX_SWEEPS):
    """All roots of sum c_j z^j by Aberth-Ehrlich iteration.

    Returns (roots, converged, sweeps).  A root is frozen once its Newton
    step falls below ``tol`` relative to its modulus, or its residual is
    within a few ulps of the rounding bound sum |c_j||z|^j.
    """
    c = np.asarray(coeffs_asc, dtype=complex)
    n = len(c) - 1
    if n < 1:
        raise DomainError("root finding requires degree >= 1")
    if c[-1] == 0:
        raise DomainError("leading coefficient is zero")
    # zero roots factor out exactly
    nz = 0
    while c[nz] == 0:
        nz += 1
    c = c[nz:]
    m = len(c) - 1
    if m == 0:
        return np.zeros(nz, dtype=complex), True, 0
    desc = (c / c[-1])[::-1]
    asc = c / c[0]
    desc_abs, asc_abs = np.abs(desc), np.abs(asc)
    z = _perturbed_circle(c, seed)
    active = np.ones(m, dtype=bool)
    eps = np.finfo(float).eps
    sweep = 0
    for sweep in range(1, max_sweeps + 1):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        for i in idx:
            ratio, rel = _newton_ratio(desc, asc, desc_abs, asc_abs, z[i])
            if rel <= 4 * eps:
                active[i] = False
                continue
            diff = z[i] - np.delete(z, i)
            corr = ratio / (1 - ratio * np.sum(1.0 / diff))
            z[i] -= corr
            if abs(corr) <= tol * max(abs(z[i]), 1e-300):
                active[i] = False
    converged = not active.any()
    z = _newton_polish(desc, asc, desc_abs, asc_abs, z)
    return np.concatenate([np.zeros(nz, dtype=complex), z]), converged, sweep


def _newton_polish(desc, asc, desc_abs, asc_abs, z: np.ndarray, steps: int = 3) -> np.ndarray:
    z = z.copy()
    for i in range(len(z)):
        for _ in range(steps):
            ratio, rel = _newton_ratio(desc, asc, desc_abs, asc_abs, z[i])
            trial = z[i] - ratio
            _, rel_t = _newton_ratio(desc, asc, desc_abs, asc_abs, trial)
            # only accept steps that reduce the residual
            if not rel_t < rel:
                break
            z[i] = trial
    return z


def relative_residual(p: PolynomialC, s) -> float:
    """|p(s)| over the rounding scale sum |c_j| |s - center|^j."""
    c = np.array(p.coefficients, dtype=complex)
    _, rel = _newton_ratio(c[::-1], c, np.abs(c[::-1]), np.abs(c), complex(s) - p.center)
    return rel


def find_roots(p: PolynomialC, tol: float = 1e-14, seed: int = 0,
               max_sweeps: int = MAX_SWEEPS) -> RootSet:
    """All roots of ``p`` in the s variable.

    An even polynomial in (s - center) is solved as a polynomial in
    w = (s - center)^2 of half the degree, then each w gives the pair
    center +/- sqrt(w).
    """
    if p.degree < 1:
        raise DomainError("root finding requires degree >= 1")
    c = np.array(p.coefficients, dtype=complex)
    if p.degree % 2 == 0 and p.is_even():
        w, ok, sweeps = aberth(c[0::2], tol, seed, max_sweeps)
        r = np.sqrt(w)
        u = np.concatenate([r, -r])
    else:
        u, ok, sweeps = aberth(c, tol, seed, max_sweeps)
    roots = tuple(complex(v) + p.center for v in u)
    res = tuple(relative_residual(p, r) for r in roots)
    return RootSet(roots, tau=DEFAULT_TAU, converged=bool(ok), sweeps=sweeps, residuals=res)


def prefactor_zeros(kmax: int) -> list[complex]:
    """s = 1/2 +/- 1/2 + 2 pi i m / ln 2, 1 <= |m| <= kmax."""
    period = 2 * math.pi / math.log(2.0)
    out = []
    for m in range(1, kmax + 1):
        for re in (0.0, 1.0):
            out.append(complex(re, m * period))
            out.append(complex(re, -m * period))
    return out


def classify_roots(rs: RootSet, delta: float, tau: float = DEFAULT_TAU,
                   variant: str = "laguerre", prefactor_tau: float | None = None) -> RootSet:
    """Label each root.  Precedence: prefactor-zero (upsilon variant only),
    outside-strip (Re <= -2 delta - 1 or Re > 2 delta), on-critical-line
    (|Re - 1/2| < tau), off-line.

    ``prefactor_tau`` is the distance to s = 1/2 +/- 1/2 + 2 pi i m / ln 2
    (m != 0) counted as a prefactor zero; it defaults to ``tau``.  The
    approximants pick these zeros up slowly, so at moderate degree they
    sit roughly 0.1 away and need a looser radius than the line test.
    """
    if not tau > 0:
        raise DomainError("tau must be positive")
    if prefactor_tau is None:
        prefactor_tau = tau
    if not prefactor_tau > 0:
        raise DomainError("prefactor_tau must be positive")
    labels = []
    period = 2 * math.pi / math.log(2.0)
    for r in rs.roots:
        if variant == "upsilon":
            m = round(r.imag / period)
            near = m != 0 and min(abs(r - complex(0, m * period)), abs(r - complex(1, m * period))) < prefactor_tau
            if near:
                labels.append(PREFACTOR)
                continue
        if r.real <= -2 * delta - 1 or r.real > 2 * delta:
            labels.append(OUTSIDE)
        elif abs(r.real - 0.5) < tau:
            labels.append(ON_LINE)
        else:
            labels.append(OFF_LINE)
    return replace(rs, labels=tuple(labels), tau=tau)


def ordered_roots(rs: RootSet) -> list:
    """(root, label) pairs sorted by (Im, Re), the export order."""
    labels = rs.labels or ("",) * len(rs.roots)
    return sorted(zip(rs.roots, labels), key=lambda p: (p[0].imag, p[0].real))


def export_rootset(rs: RootSet, path, fmt: str = "csv") -> None:
    """Write roots ordered by (Im, Re).  ``gnuplot`` writes a script with
    the data inlined, so the file plots on its own."""
    rows = ordered_roots(rs)
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["re", "im", "classification"])
            for r, lab in rows:
                w.writerow([repr(r.real), repr(r.imag), lab])
    elif fmt == "json":
        doc = {
            "tau": rs.tau,
            "converged": rs.converged,
            "roots": [{"re": r.real, "im": r.imag, "classification": lab} for r, lab in rows],
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    elif fmt == "gnuplot":
        with open(path, "w") as fh:
            fh.write("# roots, columns: re im\n")
            fh.write("set xlabel 'Re(s)'\nset ylabel 'Im(s)'\nset key outside\n")
            fh.write("set arrow from 0.5, graph 0 to 0.5, graph 1 nohead dashtype 2\n")
            present = [lab for lab in LABELS if any(l == lab for _, l in rows)] or [""]
            blocks = []
            for lab in present:
                name = "$" + (lab.replace("-", "_") or "roots")
                fh.write(f"{name} << EOD\n")
                for r, l in rows:
                    if l == lab:
                        fh.write(f"{r.real!r} {r.imag!r}\n")
                fh.write("EOD\n")
                blocks.append(f"{name} using 1:2 with points pt 7 ps 0.6 title '{lab or 'roots'}'")
            fh.write("plot " + ", \\\n     ".join(blocks) + "\n")
    else:
        raise DomainError(f"unknown export format {fmt!r}")


def load_rootset_json(path) -> RootSet:
    with open(path) as fh:
        doc = json.load(fh)
    roots = tuple(complex(d["re"], d["im"]) for d in doc["roots"])
    labels = tuple(d["classification"] for d in doc["roots"])
    if not any(labels):
        labels = ()
    return RootSet(roots, labels, tau=doc.get("tau", DEFAULT_TAU), converged=doc.get("converged", True))
