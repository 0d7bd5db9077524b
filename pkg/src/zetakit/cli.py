"""Command-line entry point: ``zetakit <subcommand> ...``.

Exit codes: 0 success, 1 domain or numerical error, 2 usage error.
The default tolerance can be set with the ZETAKIT_TOL environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from zetakit import incgamma, kummer, laguerre, zeta
from zetakit.numeric import ConvergenceError, DomainError, NearZeroDenominatorError

DEFAULT_TOL = 1e-14


@dataclass(frozen=True)
class RunConfig:
    tol: float = DEFAULT_TOL
    K: int = zeta.DEFAULT_K
    output_format: str = "text"
    seed: int = 0


def parse_complex(text: str) -> complex:
    """'a+bi', 'a-bj', 'bi', 'a', or 'a,b'.  The a+bi reading wins."""
    t = text.strip().replace(" ", "")
    try:
        return complex(t[:-1] + "j" if t.endswith("i") else t)
    except ValueError:
        pass
    if t.count(",") == 1:
        a, b = t.split(",")
        try:
            return complex(float(a), float(b))
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"cannot parse {text!r} as a complex number")


def parse_range(text: str) -> list[float]:
    """'a:b:n' -> n evenly spaced values from a to b inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"range must look like a:b:n, got {text!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if n < 1:
        raise argparse.ArgumentTypeError("range needs n >= 1")
    if n == 1:
        return [a]
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def format_float(x: float) -> str:
    # shortest string that parses back to the same double
    return repr(float(x))


def _cjson(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _env_tol() -> float:
    raw = os.environ.get("ZETAKIT_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise DomainError(f"ZETAKIT_TOL={raw!r} is not a number") from None
    if not tol > 0:
        raise DomainError("ZETAKIT_TOL must be positive")
    return tol


def _emit_json(doc: dict, out) -> None:
    json.dump(doc, out, indent=1, allow_nan=True)
    out.write("\n")


def _write_text(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


# zeta

def _zeta_eval(args, cfg: RunConfig) -> int:
    s = args.s
    res = zeta.completed_zeta(s, args.method, args.K, args.x, cfg.tol)
    val = zeta.zeta_from_xi(s, res.xi)
    inputs = {"s": _cjson(s), "method": args.method, "K": args.K, "tol": cfg.tol}
    if args.x is not None:
        inputs["x"] = _cjson(args.x)
    if cfg.output_format == "json":
        _emit_json({"inputs": inputs, "outputs": {"zeta": _cjson(val), "xi": _cjson(res.xi)},
                    "diagnostics": {"tail_bound": res.tail_bound}}, sys.stdout)
    elif cfg.output_format == "csv":
        _write_text(None, _grid_csv([(s, val, res)]))
    else:
        print(f"zeta({_fmt_c(s)}) = {_fmt_c(val)}")
        print(f"xi = {_fmt_c(res.xi)}  K = {res.K}  tail_bound = {res.tail_bound:.3e}")
    return 0


def _fmt_c(z: complex) -> str:
    sign = "+" if z.imag >= 0 or math.isnan(z.imag) else "-"
    return f"{format_float(z.real)}{sign}{format_float(abs(z.imag))}i"


def _grid_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["sigma", "t", "re", "im", "K", "tail_bound"])
    for s, val, res in rows:
        w.writerow([format_float(s.real), format_float(s.imag), format_float(val.real),
                    format_float(val.imag), res.K, format_float(res.tail_bound)])
    return buf.getvalue()


def _grid_point(s: complex, method: str, K: int, x, tol: float):
    res = zeta.completed_zeta(s, method, K, x, tol)
    return s, zeta.zeta_from_xi(s, res.xi), res


def _zeta_grid(args, cfg: RunConfig) -> int:
    points = [complex(sig, t) for sig in args.sigma for t in args.t]
    if any(p == 1 for p in points):
        raise DomainError("grid contains the pole s = 1")

    def work(p):
        return _grid_point(p, args.method, args.K, args.x, cfg.tol)

    if args.workers > 1:
        # map keeps input order, so output does not depend on scheduling
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(work, points))
    else:
        rows = [work(p) for p in points]
    if cfg.output_format == "json":
        buf = io.StringIO()
        _emit_json({
            "inputs": {"sigma": args.sigma, "t": args.t, "method": args.method, "K": args.K, "tol": cfg.tol},
            "outputs": [{"sigma": s.real, "t": s.imag, "re": v.real, "im": v.imag, "K": r.K,
                         "tail_bound": r.tail_bound} for s, v, r in rows],
            "diagnostics": {"points": len(rows)},
        }, buf)
        _write_text(args.out, buf.getvalue())
    else:
        _write_text(args.out, _grid_csv(rows))
    return 0


def _zeta_convergence(args, cfg: RunConfig) -> int:
    s = args.s
    Ks = tuple(range(1, args.Kmax))
    errs = zeta.truncation_errors(s, Ks, args.Kmax, cfg.tol)
    fit = [k for k, e in zip(Ks, errs) if e > 0][:4]
    slope = zeta.convergence_slope(s, tuple(fit), args.Kmax, cfg.tol) if len(fit) >= 2 else math.nan
    if cfg.output_format == "json":
        _emit_json({"inputs": {"s": _cjson(s), "Kmax": args.Kmax, "tol": cfg.tol},
                    "outputs": {"K": list(Ks), "error": errs},
                    "diagnostics": {"slope_vs_K2": slope, "slope_over_pi": slope / math.pi,
                                    "fit_K": fit}}, sys.stdout)
    else:
        for k, e in zip(Ks, errs):
            print(f"K={k}  |xi_K - xi_{args.Kmax}| = {e:.6e}")
        print(f"slope of log error vs K^2 over K={fit}: {slope:.6f} ({slope / math.pi:.4f} pi)")
    return 0


def _zeta_identity(args, cfg: RunConfig) -> int:
    s, x, K = args.s, args.x if args.x is not None else 1.2, args.K
    if args.check == "fourier":
        value = zeta.fourier_gamma_residual(s, x, K, cfg.tol, tail=args.tail)
        label = "lattice identity residual"
    elif args.check == "funceq":
        value = abs(zeta.xi_basic(s, K, cfg.tol).xi - zeta.xi_basic(1 - s, K, cfg.tol).xi)
        label = "|xi(s) - xi(1-s)|"
    else:
        value = abs(zeta.xi_general(s, x, K, cfg.tol).xi - zeta.xi_basic(s, K, cfg.tol).xi)
        label = "|xi_general(s, x) - xi_basic(s)|"
    if cfg.output_format == "json":
        _emit_json({"inputs": {"check": args.check, "s": _cjson(s), "x": _cjson(x), "K": K},
                    "outputs": {"residual": value}, "diagnostics": {"label": label}}, sys.stdout)
    else:
        print(f"{label} = {value:.6e}")
    return 0


# gamma, laguerre, kummer

def _gamma(args, cfg: RunConfig) -> int:
    s, z = args.s, args.z
    if args.kind == "upper":
        res = incgamma.upper_gamma(s, z, args.method, args.k, args.alpha, cfg.tol)
        method = args.method
    else:
        res = incgamma.lower_gamma_series(s, z, cfg.tol)
        method = "series"
    _emit_json({
        "inputs": {"kind": args.kind, "s": _cjson(s), "z": _cjson(z), "method": method,
                   "k": args.k, "alpha": args.alpha, "tol": cfg.tol},
        "outputs": {"value": _cjson(res.value)},
        "diagnostics": {"terms_used": res.terms_used, "tail_estimate": res.tail_estimate},
    }, sys.stdout)
    return 0


def _laguerre(args, cfg: RunConfig) -> int:
    i, alpha, z = args.i, args.alpha, args.z
    rows = []
    if args.shifted is not None:
        rows.append(("shifted", laguerre.laguerre_shifted_recur(i, args.shifted, z)))
    else:
        rows.append(("recur", laguerre.laguerre_recur(i, alpha, z)))
    if args.asymptotic:
        # same quantity L_i^(alpha)(z): oscillatory form for Re z > 0, growing form for Re z < 0
        if z.real < 0:
            approx_val = laguerre.laguerre_asymptotic(i, alpha, -z, sign="-")
        else:
            approx_val = laguerre.laguerre_asymptotic(i, alpha, z, sign="+")
        rows.append(("asymptotic", approx_val))
    if cfg.output_format == "json":
        _emit_json({"inputs": {"i": i, "alpha": _cjson(alpha), "z": _cjson(z),
                               "shifted": None if args.shifted is None else _cjson(args.shifted)},
                    "outputs": {k: _cjson(v) for k, v in rows}, "diagnostics": {}}, sys.stdout)
    else:
        for _, v in rows:
            print(f"{format_float(v.real)} {format_float(v.imag)}")
    return 0


def _kummer(args, cfg: RunConfig) -> int:
    a, b, z = args.a, args.b, args.z
    if args.laguerre is not None:
        param, n = args.laguerre
        n = int(n.real)
        if args.kind == "M":
            res = kummer.kummer_m_laguerre(a, b, z, param, n)
        else:
            res = kummer.kummer_u_laguerre(a, b, z, param, n)
    elif args.kind == "M":
        res = kummer.kummer_m_series(a, b, z, cfg.tol)
    else:
        b_int = b.imag == 0 and b.real == round(b.real)
        res = (kummer.kummer_u_integer_b if b_int else kummer.kummer_u)(a, b, z, cfg.tol)
    if cfg.output_format == "json":
        _emit_json({"inputs": {"kind": args.kind, "a": _cjson(a), "b": _cjson(b), "z": _cjson(z)},
                    "outputs": {"value": _cjson(res.value)},
                    "diagnostics": {"terms_used": res.terms_used, "tail_estimate": res.tail_estimate}},
                   sys.stdout)
    else:
        print(f"{format_float(res.value.real)} {format_float(res.value.imag)}")
    return 0


# zeros

def _zeros(args, cfg: RunConfig) -> int:
    from zetakit import approx, roots

    spec = approx.ApproximantSpec(delta=args.delta, n=args.n, variant=args.variant,
                                  z_max=args.z_max, cf_level=args.cf_level)
    poly = approx.approximant_polynomial(spec)
    rs = roots.find_roots(poly, seed=cfg.seed)
    rs = roots.classify_roots(rs, spec.delta, args.tau, spec.variant, args.prefactor_tau)
    fmt = "json" if cfg.output_format == "json" else "csv"
    if args.out:
        roots.export_rootset(rs, args.out, fmt)
    if args.plot:
        roots.export_rootset(rs, args.plot, "gnuplot")
    counts = rs.counts()
    summary = {
        "inputs": {"delta": spec.delta, "n": spec.n, "variant": spec.variant, "z_max": spec.z_max,
                   "tau": args.tau, "seed": cfg.seed},
        "outputs": {"degree": poly.degree, "roots": len(rs.roots), "counts": counts},
        "diagnostics": {"converged": rs.converged, "sweeps": rs.sweeps,
                        "max_relative_residual": max(rs.residuals) if rs.residuals else 0.0},
    }
    if not rs.converged:
        print("warning: root iteration did not converge; roots are unpolished", file=sys.stderr)
    if cfg.output_format == "json" and not args.out:
        summary["outputs"]["root_list"] = [
            {"re": r.real, "im": r.imag, "classification": lab} for r, lab in roots.ordered_roots(rs)
        ]
        _emit_json(summary, sys.stdout)
    elif cfg.output_format == "json":
        _emit_json(summary, sys.stdout)
    else:
        print(f"degree {poly.degree}, {len(rs.roots)} roots, converged={rs.converged}")
        for lab, cnt in counts.items():
            print(f"  {lab:18s} {cnt}")
        if not args.out:
            for r, lab in roots.ordered_roots(rs):
                print(f"{format_float(r.real)} {format_float(r.imag)} {lab}")
    return 0


def _selftest(args, cfg: RunConfig) -> int:
    from zetakit.selftest import run_all

    results = run_all()
    if cfg.output_format == "json":
        _emit_json({"inputs": {}, "outputs": [r.__dict__ for r in results],
                    "diagnostics": {"failed": sum(not r.passed for r in results)}}, sys.stdout)
    else:
        width = max(len(r.module) + len(r.name) for r in results) + 3
        for r in results:
            tag = "PASS" if r.passed else "FAIL"
            print(f"{tag}  {(r.module + ': ' + r.name).ljust(width)} {r.detail}")
        failed = sum(not r.passed for r in results)
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="tolerance (default: $ZETAKIT_TOL or 1e-14)")
    common.add_argument("--format", dest="output_format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="root-finder start perturbation seed")

    p = argparse.ArgumentParser(prog="zetakit", description="Riemann zeta via incomplete-gamma series")
    sub = p.add_subparsers(dest="command", required=True)

    pz = sub.add_parser("zeta", help="zeta and the completed zeta function")
    zsub = pz.add_subparsers(dest="action", required=True)
    ev = zsub.add_parser("eval", parents=[common])
    ev.add_argument("s", type=parse_complex)
    ev.add_argument("--method", choices=("basic", "general", "upsilon"), default="basic")
    ev.add_argument("--x", type=parse_complex, default=None)
    ev.add_argument("--K", type=int, default=zeta.DEFAULT_K)
    ev.set_defaults(func=_zeta_eval)

    gr = zsub.add_parser("grid", parents=[common])
    gr.add_argument("--sigma", type=parse_range, required=True, help="a:b:n")
    gr.add_argument("--t", type=parse_range, required=True, help="a:b:n")
    gr.add_argument("--out", default=None)
    gr.add_argument("--method", choices=("basic", "general", "upsilon"), default="basic")
    gr.add_argument("--x", type=parse_complex, default=None)
    gr.add_argument("--K", type=int, default=zeta.DEFAULT_K)
    gr.add_argument("--workers", type=int, default=1)
    gr.set_defaults(func=_zeta_grid)

    cv = zsub.add_parser("convergence", parents=[common])
    cv.add_argument("s", type=parse_complex)
    cv.add_argument("--Kmax", type=int, default=8)
    cv.set_defaults(func=_zeta_convergence)

    idn = zsub.add_parser("identity", parents=[common])
    idn.add_argument("--check", choices=("fourier", "funceq", "xindep"), required=True)
    idn.add_argument("--s", type=parse_complex, default=complex(3))
    idn.add_argument("--x", type=parse_complex, default=None)
    idn.add_argument("--K", type=int, default=zeta.DEFAULT_K)
    idn.add_argument("--tail", choices=("none", "zeta"), default="none",
                     help="fourier only: add the k > K lower-gamma tail")
    idn.set_defaults(func=_zeta_identity)

    pg = sub.add_parser("gamma", parents=[common], help="incomplete gamma functions (JSON output)")
    pg.add_argument("kind", choices=("upper", "lower"))
    pg.add_argument("s", type=parse_complex)
    pg.add_argument("z", type=parse_complex)
    pg.add_argument("--method", choices=("cf", "sum", "limit", "series"), default="cf")
    pg.add_argument("--k", type=int, default=None)
    pg.add_argument("--alpha", type=float, default=None)
    pg.set_defaults(func=_gamma)

    pl = sub.add_parser("laguerre", parents=[common], help="generalised Laguerre polynomials")
    pl.add_argument("i", type=int)
    pl.add_argument("alpha", type=parse_complex)
    pl.add_argument("z", type=parse_complex)
    pl.add_argument("--shifted", type=parse_complex, default=None, metavar="BETA")
    pl.add_argument("--asymptotic", action="store_true", help="also print the large-i asymptotic value")
    pl.set_defaults(func=_laguerre)

    pk = sub.add_parser("kummer", parents=[common], help="confluent hypergeometric M and U")
    pk.add_argument("kind", choices=("M", "U"))
    pk.add_argument("a", type=parse_complex)
    pk.add_argument("b", type=parse_complex)
    pk.add_argument("z", type=parse_complex)
    pk.add_argument("--laguerre", nargs=2, type=parse_complex, default=None, metavar=("PARAM", "N"))
    pk.set_defaults(func=_kummer)

    pr = sub.add_parser("zeros", parents=[common], help="roots of the polynomial approximants")
    pr.add_argument("--delta", type=float, default=5.0)
    pr.add_argument("--n", type=int, default=25)
    pr.add_argument("--variant", choices=("laguerre", "upsilon", "cf"), default="laguerre")
    pr.add_argument("--z-max", dest="z_max", type=int, default=5)
    pr.add_argument("--cf-level", dest="cf_level", type=int, default=6)
    pr.add_argument("--tau", type=float, default=0.05)
    pr.add_argument("--prefactor-tau", dest="prefactor_tau", type=float, default=None)
    pr.add_argument("--out", default=None)
    pr.add_argument("--plot", default=None)
    pr.set_defaults(func=_zeros)

    ps = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    ps.set_defaults(func=_selftest)
    return p


_NEG_NUMBER = re.compile(r"^-(\d|\.\d|[ij]$|inf)")


def _protect_negative(argv: list[str]) -> list[str]:
    # argparse reads '-1+2i' as an option; a leading space keeps it positional
    return [" " + a if _NEG_NUMBER.match(a) else a for a in argv]


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negative(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        tol = args.tol if args.tol is not None else _env_tol()
        if not tol > 0:
            raise DomainError("tol must be positive")
        cfg = RunConfig(tol=tol, K=getattr(args, "K", zeta.DEFAULT_K),
                        output_format=args.output_format, seed=args.seed)
        return args.func(args, cfg)
    except (DomainError, NearZeroDenominatorError, ConvergenceError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
