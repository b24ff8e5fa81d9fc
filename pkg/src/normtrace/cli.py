"""Command line entry point: ``normtrace {compute,table,bounds,verify}``.

Output is TSV with ``#`` header lines recording the tower (moduli as
coefficient lists, lowest degree first, and primitive element indices) or,
with ``--format json``, one JSON object per line.  Element arguments are
indices: an element of F_q with F_p-coefficients c_i is ``sum(c_i p^i)``.

Exit codes: 0 success (printed-formula disagreements are findings, not
errors), 1 an invariant of the computation failed, 2 invalid field or
argument, 3 an enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from . import charsum as cs
from . import closedforms as cf
from . import fieldtower as ft
from . import oracle as orc
from . import pnab
from . import verify as vf
from .errors import EvenCharacteristic, NormTraceError, NotPrime, ScaleExceeded, ZeroArgument
from .ntheory import is_prime

EXIT_OK, EXIT_INVARIANT, EXIT_ARGS, EXIT_SCALE = 0, 1, 2, 3

METHODS = ("brute", "curve", "gauss", "toric", "closed")


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.3e}"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return v


class Writer:
    """TSV or JSON-lines emitter; column order is fixed per table."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.out = stream or sys.stdout
        self._cols = None

    def comment(self, text: str, **data):
        if self.fmt == "json":
            self._emit({"type": "header", "text": text, **{k: _jsonable(v) for k, v in data.items()}})
        else:
            self.out.write(f"# {text}\n")

    def columns(self, cols):
        self._cols = tuple(cols)
        if self.fmt == "tsv":
            self.out.write("\t".join(self._cols) + "\n")

    def row(self, values: dict, kind: str = "row"):
        if self.fmt == "json":
            self._emit({"type": kind, **{k: _jsonable(values.get(k)) for k in self._cols}})
        else:
            self.out.write("\t".join(_fmt(values.get(k)) for k in self._cols) + "\n")

    def _emit(self, obj):
        self.out.write(json.dumps(obj, sort_keys=False) + "\n")


# argument handling -----------------------------------------------------------

def _check_field(p: int, e: int):
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if e < 1:
        raise UsageError("e must be positive")


def _check_element(name: str, v: int, q: int):
    if not 0 <= v < q:
        raise UsageError(f"--{name} = {v} is not an element index of F_{q} (0..{q - 1})")


def _tower_header(w: Writer, t: ft.FieldTower, first: bool):
    if first:
        w.comment(f"normtrace {__version__}", version=__version__)
        w.comment(f"p={t.p} e={t.e} q={t.q} seed={t.seed}", p=t.p, e=t.e, q=t.q, seed=t.seed)
        w.comment(f"base_modulus={list(t.base_modulus)} g_q={t.g_q}",
                  base_modulus=list(t.base_modulus), g_q=t.g_q)
        w.comment("encoding: F_q index sum(c_i p^i); F_q^n index sum(m_j q^j); moduli lowest degree first")
    w.comment(f"n={t.n} top_modulus={list(t.top_modulus)} g_qn={t.g_qn}",
              n=t.n, top_modulus=list(t.top_modulus), g_qn=t.g_qn)


def _headers(w: Writer, p: int, e: int, ns, seed: int):
    for k, n in enumerate(ns):
        _tower_header(w, pnab._tower(p, e, n, seed), k == 0)


# computations ----------------------------------------------------------------

def nn_row(p: int, e: int, n: int, a: int, b: int, method: str, source: str = cf.ERRATA,
           seed: int = 0, cap: int | None = orc.ELEMENT_CAP) -> dict:
    """One N_n(a, b) evaluation with the method's by-products."""
    t = pnab._tower(p, e, n, seed)
    q = t.q
    F = t.fq
    row = {"p": p, "e": e, "q": q, "n": n, "a": a, "b": b, "method": method,
           "source": source if method == "closed" else None, "N": None, "X": None, "extra": None}
    if method == "brute":
        row["N"] = orc.count_norm_trace(t, a, b, cap)
    elif method == "curve":
        alpha, beta = ft.norm_preimage(t, t.mid(a)), ft.trace_preimage(t, t.mid(b))
        X = orc.count_curve_points_tracefiber(t, alpha, beta, cap)
        row.update(X=X, N=cs.nn_via_curve(q, X, b == 0))
    elif method == "gauss":
        X, residual = cs.count_curve_gauss(F, n, a, b, with_residual=True)
        row.update(X=X, N=cs.nn_via_curve(q, X, b == 0), extra=f"residual={residual:.3e}")
    elif method == "toric":
        if n < 2:
            raise UsageError("the toric method needs n >= 2")
        u = cs.toric_parameter(F, n, a, b)
        Y = orc.count_toric_points(F, n, u)
        row.update(N=cs.nn_via_toric(F, n, a, b, Y), extra=f"u={u} Y={Y}")
    elif method == "closed":
        src = cf.normalize_source(source)
        c = cf.curve_closed(q, n, a, b, src)
        row.update(X=c.value, extra=f"branch={c.branch}")
        if b:
            row["N"] = cf.nn_closed(q, n, a, b, src).value
        elif c.integral:
            row["N"] = cs.nn_via_curve(q, c.value, True)
    else:
        raise UsageError(f"unknown method {method!r}")
    return row


NN_COLS = ("p", "e", "q", "n", "a", "b", "method", "source", "N", "X", "extra")


def cmd_compute(args, w: Writer) -> int:
    _check_field(args.p, args.e)
    q = args.p**args.e
    if args.n < 1:
        raise UsageError("n must be positive")
    _check_element("a", args.a, q)
    _check_element("b", args.b, q)
    row = nn_row(args.p, args.e, args.n, args.a, args.b, args.method, args.source, args.seed, args.cap)
    _headers(w, args.p, args.e, [args.n], args.seed)
    w.columns(NN_COLS)
    w.row(row)
    return EXIT_OK


def cmd_table(args, w: Writer) -> int:
    _check_field(args.p, args.e)
    q = args.p**args.e
    if args.n_max < 1:
        raise UsageError("n-max must be positive")
    F = pnab.base_field(args.p, args.e, args.seed)
    rows, cols = [], None
    ns = list(range(1, args.n_max + 1))
    if args.what in ("nn", "curve"):
        cols = NN_COLS
        method = args.method or ("brute" if args.what == "nn" else "curve")
        for n in ns:
            for a in range(1, q):
                for b in range(1, q):
                    rows.append(nn_row(args.p, args.e, n, a, b, method, args.source, args.seed, args.cap))
    elif args.what == "pn":
        cols = ("p", "e", "q", "n", "a", "b", "provider", "P")
        provider = {"brute": pnab.ORACLE, "gauss": pnab.GAUSS,
                    "closed": pnab.NnProvider("closed", args.source)}.get(args.method or "brute")
        if provider is None:
            raise UsageError("pn tables support --method brute, gauss or closed")
        for n in ns:
            for a in range(1, q):
                for b in range(1, q):
                    rows.append({"p": args.p, "e": args.e, "q": q, "n": n, "a": a, "b": b,
                                 "provider": provider.label, "P": pnab.pn(F, n, a, b, provider)})
    elif args.what == "toric":
        cols = ("p", "e", "q", "n", "u", "Y_enum", "Y_gauss")
        ns = [n for n in ns if n >= 2]
        for n in ns:
            for u in range(1, q):
                rows.append({"p": args.p, "e": args.e, "q": q, "n": n, "u": u,
                             "Y_enum": orc.count_toric_points(F, n, u),
                             "Y_gauss": cs.count_toric_gauss(F, n, u)})
    _headers(w, args.p, args.e, ns or [1], args.seed)
    w.columns(cols)
    for r in rows:
        w.row(r)
    return EXIT_OK


BOUND_COLS = ("bound", "q", "n", "instance", "observed", "center", "radius", "radius_float", "holds", "tighter_than")


def cmd_bounds(args, w: Writer) -> int:
    _check_field(args.p, args.e)
    if args.n_max < 2:
        raise UsageError("bounds need n-max >= 2")
    reports = []
    ns = list(range(2, args.n_max + 1))
    for n in ns:
        t = pnab._tower(args.p, args.e, n, args.seed)
        C = orc.norm_trace_census(t, args.cap)
        q = t.q
        curves = {(a, b): orc.count_curve_points_tracefiber(
                      t, ft.norm_preimage(t, t.mid(a)), ft.trace_preimage(t, t.mid(b)), args.cap)
                  for a in range(1, q) for b in range(q)}
        F = t.fq
        pn_vals = None
        if q ** (n - 2) <= orc.POLY_CAP and n <= args.pn_n_max:
            pn_vals = {(a, b): pnab.pn(F, n, a, b) for a in range(1, q) for b in range(1, q)}
        reports.extend(vf.bound_reports(t, C, curves, pn_vals))
    _headers(w, args.p, args.e, ns, args.seed)
    w.columns(BOUND_COLS)
    holds = fails = improvements = 0
    for r in reports:
        row = r.row()
        row["instance"] = list(r.instance)
        w.row(row)
        holds += r.holds
        fails += not r.holds
        improvements += bool(row["tighter_than"])
    w.comment(f"summary rows={len(reports)} holds={holds} fails={fails} improvements={improvements}",
              rows=len(reports), holds=holds, fails=fails, improvements=improvements)
    return EXIT_OK


VERIFY_COLS = ("check", "instance", "methods", "values", "agree", "required", "errata_ref")


def cmd_verify(args, w: Writer) -> int:
    if args.p is not None:
        _check_field(args.p, args.e)
        fields = ((args.p, args.e),)
    else:
        fields = vf.DEFAULT_FIELDS
    plan = vf.plan_n_max(fields, args.budget, args.n_max)
    records = vf.run_verify(fields, args.n_max, args.budget, args.seed)
    for p, e in fields:
        _headers(w, p, e, range(1, plan[(p, e)] + 1), args.seed)
    w.columns(VERIFY_COLS)
    for r in records:
        w.row(r.row(), "record")
    bad = vf.failures(records)
    ledger = vf.errata_ledger(records)
    for entry in ledger:
        fw = entry["first_witness"]
        w.comment(f"errata {entry['check']} {entry['branch']} witnesses={entry['witnesses']} "
                  f"first={_fmt(fw['instance'])} values={_fmt(fw['values'])}", errata=entry)
    w.comment(f"summary records={len(records)} required_failures={len(bad)} findings={len(ledger)} "
              f"n_max={','.join(f'{p**e}:{plan[(p, e)]}' for p, e in fields)}",
              records=len(records), required_failures=len(bad), findings=len(ledger))
    return EXIT_INVARIANT if bad else EXIT_OK


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="normtrace", description="Norm/trace counts over finite fields.")
    ap.add_argument("--version", action="version", version=f"normtrace {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, need_field=True):
        sp.add_argument("--p", type=int, required=need_field, default=None, help="characteristic")
        sp.add_argument("--e", type=int, default=1, help="q = p^e")
        sp.add_argument("--seed", type=int, default=0, help="modulus search offset")
        sp.add_argument("--format", choices=("tsv", "json"), default="tsv")
        sp.add_argument("--cap", type=int, default=orc.ELEMENT_CAP, help="enumeration cap on q^n")

    sp = sub.add_parser("compute", help="N_n(a, b) by one method")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", type=int, required=True, help="norm (element index)")
    sp.add_argument("--b", type=int, required=True, help="trace (element index)")
    sp.add_argument("--method", choices=METHODS, default="brute")
    sp.add_argument("--source", choices=("paper", "errata"), default="errata")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("table", help="grid over n <= n-max and a, b in F_q*")
    common(sp)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--what", choices=("nn", "curve", "pn", "toric"), default="nn")
    sp.add_argument("--method", choices=METHODS, default=None)
    sp.add_argument("--source", choices=("paper", "errata"), default="errata")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("bounds", help="every bound against exact values")
    common(sp)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--pn-n-max", type=int, default=6, help="largest n for P_n bound rows")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("verify", help="cross-method verification and errata ledger")
    common(sp, need_field=False)
    sp.add_argument("--n-max", type=int, default=None)
    sp.add_argument("--budget", type=float, default=None, help="estimated seconds; shrinks n-max")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    w = Writer(args.format)
    try:
        return args.func(args, w)
    except ScaleExceeded as exc:
        print(f"normtrace: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (UsageError, NotPrime, ZeroArgument, EvenCharacteristic, ValueError) as exc:
        print(f"normtrace: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except NormTraceError as exc:
        print(f"normtrace: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
