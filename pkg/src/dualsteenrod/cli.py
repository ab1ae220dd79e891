"""Command-line interface: ``python -m dualsteenrod <verb> ...``.

Exit codes: 0 success, 1 failed verification, 2 usage or resource error.
Resource limits can also be set through DSQ_* environment variables.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import acceptance, chart
from .comodule import Coalgebra, cobar_ext, comodule_MI, nogo_check, trivial_comodule
from .groebner import ResourceExceeded, buchberger
from .milnor import Full, Trunc, q1, zeta
from .polycore import parse_poly, xi_table
from .quotient import (
    DEFAULT_MAX_DEGREE,
    DEFAULT_MAX_DIM,
    build_quotient,
    frobenius_check,
    poincare_series,
    quotient_generators,
    split_dims,
)
from .sseq import RANK2_END, RANK3_END, adams_run, pages_to_json

ENV_PREFIX = "DSQ_"


@dataclass(frozen=True)
class Limits:
    max_dim: int = DEFAULT_MAX_DIM
    max_degree: int = DEFAULT_MAX_DEGREE

    @classmethod
    def from_args(cls, args):
        return cls(args.max_dim, args.max_degree)


def _env(name, default, kind=int):
    raw = os.environ.get(ENV_PREFIX + name)
    return default if raw is None else kind(raw)


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def _dims_csv(dims):
    lines = ["degree,dim"] + [f"{d},{n}" for d, n in sorted(dims.items())]
    return "\n".join(lines)


def _poly_out(p, fmt):
    return p.to_json() if fmt == "json" else str(p)


# ---------------------------------------------------------------- verbs

def cmd_zeta(args):
    spec = Trunc(args.truncate) if args.truncate else Full(args.full or args.n)
    return 0, _poly_out(zeta(args.n, spec), args.format)


def cmd_q1(args):
    table = xi_table(args.vars)
    return 0, _poly_out(q1(parse_poly(table, args.poly)), args.format)


def cmd_groebner(args):
    if args.gens:
        table = xi_table(args.vars)
        gens = [parse_poly(table, g) for g in args.gens]
    else:
        if args.k is None or args.m is None:
            raise UsageError("give k m or --gens")
        gens = quotient_generators(args.k, args.m)
    gb = buchberger(gens, max_degree=args.max_degree)
    if args.format == "json":
        return 0, gb.to_json()
    return 0, "\n".join(str(p) for p in gb.polys)


def cmd_quotient(args):
    qr = build_quotient(args.k, args.m, args.max_dim, args.max_degree)
    if args.format == "csv":
        return 0, _dims_csv(qr.dims())
    if args.format == "json":
        basis = {str(d): [qr.table.format_monomial(m) for m in ms] for d, ms in sorted(qr.basis.items())}
        return 0, _dump({"k": args.k, "m": args.m, "dimension": qr.dimension,
                         "top_degree": qr.top_degree, "basis": basis})
    return 0, f"dimension {qr.dimension}, top degree {qr.top_degree}"


def cmd_poincare(args):
    qr = build_quotient(args.k, args.m, args.max_dim, args.max_degree)
    series = poincare_series(qr)
    if args.format == "csv":
        return 0, _dims_csv(series.as_dims())
    if args.format == "json":
        return 0, _dump(list(series.coeffs))
    return 0, " ".join(str(c) for c in series.coeffs)


def cmd_frobenius(args):
    qr = build_quotient(args.k, args.m, args.max_dim, args.max_degree, check=False)
    report = frobenius_check(qr)
    if args.format == "json":
        out = _dump({"ok": report.ok, "top_degree": report.top_degree, "top_dim": report.top_dim,
                     "rows": [[r.degree, r.rows, r.cols, r.rank] for r in report.rows]})
    else:
        out = "\n".join(report.lines())
    return (0 if report.ok else 1), out


def cmd_split(args):
    qr = build_quotient(args.k, args.m, args.max_dim, args.max_degree)
    dims = split_dims(args.k, args.m, args.n, qr)
    if args.format == "json":
        return 0, _dump([[d, n] for d, n in dims.items()])
    return 0, _dims_csv(dims)


def cmd_comodule(args):
    M = comodule_MI(args.I)
    coaction = {M.labels[j]: [[p, M.labels[i]] for p, i in M.coaction[j]] for j in range(len(M))}
    obj = {"basis": list(M.labels), "degrees": list(M.degrees), "coaction": coaction,
           "obstructed": nogo_check(args.I)}
    if args.format == "json":
        return 0, _dump(obj)
    lines = [f"psi({b}) = " + " + ".join(f"u^{p} (x) {t}" if p else f"1 (x) {t}" for p, t in terms)
             for b, terms in coaction.items()]
    lines.append(f"obstructed indices: {obj['obstructed']}")
    return 0, "\n".join(lines)


def cmd_ext(args):
    C = Coalgebra.truncated(args.truncate) if args.truncate else Coalgebra()
    M = comodule_MI(args.I) if args.I else trivial_comodule()
    ext = cobar_ext(M, C, args.t_bound)
    rows = sorted(ext.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    if args.format == "json":
        return 0, _dump([[s, t, n] for (s, t), n in rows])
    return 0, "\n".join(["s,t,dim"] + [f"{s},{t},{n}" for (s, t), n in rows])


def cmd_adams(args):
    if args.run:
        run = {"rank2": RANK2_END, "rank3": RANK3_END}[args.run]
        pages = run.run(args.stems)
    else:
        if args.k is None or args.m is None:
            raise UsageError("give k m or --run")
        pages = adams_run(args.k, args.m, args.n, args.stems)
    objs = pages_to_json(pages)
    if not args.pages:
        objs = objs[-1:]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for page, obj in zip(pages[-len(objs):], objs):
            base = os.path.join(args.out, f"E{obj['r']}")
            chart.write_atomic(base + ".json", _dump(obj) + "\n")
            chart.write_atomic(base + ".svg", chart.render_svg(obj, boundary=page.stems[1]))
    if args.format == "text":
        return 0, "".join(chart.render_text(o) for o in objs).rstrip("\n")
    if args.format == "svg":
        return 0, chart.render_svg(objs[-1], boundary=pages[-1].stems[1]).rstrip("\n")
    return 0, "\n".join(_dump(o) for o in objs)


def cmd_chart(args):
    with open(args.page) as fh:
        obj = json.load(fh)
    if args.format == "text":
        text = chart.render_text(obj)
    else:
        text = chart.render_svg(obj, boundary=args.boundary)
    if args.out:
        chart.write_atomic(args.out, text)
        return 0, ""
    return 0, text.rstrip("\n")


def cmd_verify(args):
    lines = []
    ok = acceptance.run_suite(args.suite, emit=lines.append)
    lines.append(f"suite {args.suite}: {'PASS' if ok else 'FAIL'}")
    return (0 if ok else 1), "\n".join(lines)


# ---------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="dualsteenrod", description=__doc__.splitlines()[0])
    p.add_argument("--max-dim", type=int, default=_env("MAX_DIM", DEFAULT_MAX_DIM))
    p.add_argument("--max-degree", type=int, default=_env("MAX_DEGREE", DEFAULT_MAX_DEGREE))
    fmt_default = _env("FORMAT", None, str)
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, formats, help_text):
        sp = sub.add_parser(name, help=help_text)
        default = fmt_default if fmt_default in formats else formats[0]
        sp.add_argument("--format", choices=formats, default=default)
        sp.set_defaults(func=func)
        return sp

    sp = verb("zeta", cmd_zeta, ["json", "text"], "conjugate class zeta_n")
    sp.add_argument("n", type=int)
    sp.add_argument("--truncate", type=int, help="work in A<k> = F2[xi_1..xi_k]")
    sp.add_argument("--full", type=int, help="ambient F2[xi_1..xi_N]")

    sp = verb("q1", cmd_q1, ["json", "text"], "Dyer-Lashof Q1 of a polynomial")
    sp.add_argument("poly")
    sp.add_argument("--vars", type=int, default=_env("VARS", 7))

    sp = verb("groebner", cmd_groebner, ["json", "text"], "reduced Groebner basis")
    sp.add_argument("k", type=int, nargs="?")
    sp.add_argument("m", type=int, nargs="?")
    sp.add_argument("--gens", nargs="+")
    sp.add_argument("--vars", type=int, default=_env("VARS", 3))

    for name, func, formats in [("quotient", cmd_quotient, ["text", "json", "csv"]),
                                ("poincare", cmd_poincare, ["text", "json", "csv"]),
                                ("frobenius", cmd_frobenius, ["text", "json"])]:
        sp = verb(name, func, formats, f"{name} data for the quotient by zeta_(m+1..m+k)")
        sp.add_argument("k", type=int)
        sp.add_argument("m", type=int)

    sp = verb("split", cmd_split, ["csv", "json"], "dimensions after the e-splitting")
    sp.add_argument("k", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)

    sp = verb("comodule", cmd_comodule, ["text", "json"], "the comodule M_I and ring obstructions")
    sp.add_argument("I", type=int, nargs="+")

    sp = verb("ext", cmd_ext, ["csv", "json"], "cobar Ext over F2[u]")
    sp.add_argument("--module", dest="I", type=int, nargs="*", default=[])
    sp.add_argument("--truncate", type=int, help="use F2[u]/(u^(2^k))")
    sp.add_argument("--t-bound", type=int, default=_env("T_BOUND", 20))

    sp = verb("adams", cmd_adams, ["json", "text", "svg"], "run the spectral sequence")
    sp.add_argument("k", type=int, nargs="?")
    sp.add_argument("m", type=int, nargs="?")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--stems", type=int, default=_env("STEMS", None))
    sp.add_argument("--pages", action="store_true", help="emit every page, not just the last")
    sp.add_argument("--run", choices=["rank2", "rank3"], help="an endomorphism-algebra run")
    sp.add_argument("--out", help="directory for per-page JSON and SVG")

    sp = verb("chart", cmd_chart, ["svg", "text"], "render a stored page JSON")
    sp.add_argument("page")
    sp.add_argument("--out")
    sp.add_argument("--boundary", type=int)

    sp = verb("verify", cmd_verify, ["text"], "run the acceptance suite")
    sp.add_argument("--suite", choices=["core", "sseq", "all"], default="all")
    return p


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        code, text = args.func(args)
    except (UsageError, ValueError, ResourceExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if text:
        stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
