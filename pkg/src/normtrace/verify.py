"""Cross-method verification harness.

Brute force is ground truth.  Each check yields :class:`VerificationRecord`
rows; ``required`` rows are identities that must hold (a disagreement is a
bug), while the others compare printed statements with ground truth and
their disagreements are findings that go to the errata ledger.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import bounds as bd
from . import charsum as cs
from . import closedforms as cf
from . import fieldtower as ft
from . import oracle as orc
from . import pnab
from .errors import NormTraceError

DEFAULT_FIELDS = ((2, 1), (3, 1), (2, 2), (5, 1))
DEFAULT_N_MAX = {2: 16, 3: 10, 4: 8, 5: 7}
PN_N_MAX = {2: 6, 3: 6, 4: 4, 5: 6}
NAIVE_CAP = 20_000
LIFT_CAP = 20_000


@dataclass(frozen=True)
class VerificationRecord:
    check: str
    instance: tuple
    methods: tuple
    values: tuple
    agree: bool
    required: bool = True
    errata_ref: str | None = None

    def key(self):
        return (self.check, self.instance, self.methods)

    def row(self) -> dict:
        return {
            "check": self.check,
            "instance": list(self.instance),
            "methods": list(self.methods),
            "values": [_plain(v) for v in self.values],
            "agree": self.agree,
            "required": self.required,
            "errata_ref": self.errata_ref,
        }


def _plain(v):
    if isinstance(v, (int, bool, str)) or v is None:
        return v
    return str(v)


@dataclass
class FieldResult:
    q: int
    records: list = field(default_factory=list)

    def add(self, check, instance, methods, values, required=True, errata_ref=None, agree=None):
        if agree is None:
            agree = all(v == values[0] for v in values[1:])
        self.records.append(VerificationRecord(check, tuple(instance), tuple(methods), tuple(values),
                                               bool(agree), required, errata_ref if not agree else None))


def _field_label(p: int, e: int) -> int:
    return p**e


# individual checks -------------------------------------------------------

def _try(fn, *args, **kw):
    """fn(*args) or, if an invariant error is raised, its description (which then disagrees)."""
    try:
        return fn(*args, **kw)
    except NormTraceError as exc:
        return f"raised {type(exc).__name__}: {exc}"


def _check_census(res: FieldResult, t: ft.FieldTower, C):
    q, n = t.q, t.n
    for a in range(1, q):
        res.add("census.row", (q, n, a), ("sum_b N", "(q^n-1)/(q-1)"),
                (int(C[a].sum()), (q**n - 1) // (q - 1)))
    for b in range(q):
        res.add("census.col", (q, n, b), ("sum_{a!=0} N", "q^{n-1}-[b=0]"),
                (int(C[1:, b].sum()), q ** (n - 1) - (b == 0)))


def _check_curves(res: FieldResult, t: ft.FieldTower, C):
    q, n = t.q, t.n
    F = t.fq
    for a in range(1, q):
        for b in range(q):
            pairs = ft.preimage_pairs(t, t.mid(a), t.mid(b), 2)
            counts = [orc.count_curve_points_tracefiber(t, al, be) for al, be in pairs]
            expect = q * (q - 1) * int(C[a, b]) + 1 + (q if b == 0 else 0)
            res.add("link", (q, n, a, b), tuple(f"tracefiber[{k}]" for k in range(len(counts))) + ("q(q-1)N+1",),
                    tuple(counts) + (expect,))
            if t.order <= NAIVE_CAP:
                res.add("curve.naive", (q, n, a, b), ("tracefiber", "naive"),
                        (counts[0], orc.count_curve_points_naive(t, *pairs[0])))
            g = _try(cs.count_curve_gauss, F, n, a, b)
            res.add("curve.gauss", (q, n, a, b), ("tracefiber", "gauss"), (counts[0], g))


def _check_lifts(res: FieldResult, t: ft.FieldTower):
    if t.order > LIFT_CAP or t.q < 3:
        return
    F = t.fq
    for j in range(1, t.q - 1):
        direct = cs.lifted_gauss_sum_direct(t, j)
        lifted = cs.davenport_hasse_lift(cs.multiplicative(F, j), t.n)
        tol = 1e-6 * t.q ** (t.n / 2)
        res.add("davenport_hasse", (t.q, t.n, j), ("direct", "lift"),
                (f"{direct.real:.6f}{direct.imag:+.6f}i", f"{lifted.real:.6f}{lifted.imag:+.6f}i"),
                agree=abs(direct - lifted) < tol)


def _check_toric(res: FieldResult, t: ft.FieldTower, C):
    q, n = t.q, t.n
    if n < 2 or (q - 1) ** (n - 1) > orc.TORIC_CAP:
        return
    F = t.fq
    for u in range(1, q):
        res.add("toric.gauss", (q, n, u), ("enum", "gauss"),
                (orc.count_toric_points(F, n, u), _try(cs.count_toric_gauss, F, n, u)))
    for a in range(1, q):
        for b in range(1, q):
            res.add("toric.link", (q, n, a, b), ("oracle", "via_toric"),
                    (int(C[a, b]), _try(cs.nn_via_toric, F, n, a, b)))


def _check_closed(res: FieldResult, t: ft.FieldTower, C):
    q, n = t.q, t.n
    if q not in cf.CLOSED_FORM_FIELDS:
        return
    F = t.fq
    for a in range(1, q):
        for b in range(q):
            X = orc.count_curve_points_tracefiber(t, ft.norm_preimage(t, t.mid(a)), ft.trace_preimage(t, t.mid(b)))
            if q > 2:
                ce = cf.curve_closed(q, n, a, b, cf.ERRATA)
                cp = cf.curve_closed(q, n, a, b, cf.PAPER)
                res.add("closed.curve.errata", (q, n, a, b), ("oracle", ce.branch), (X, ce.value))
                res.add("closed.curve.paper", (q, n, a, b), ("oracle", cp.branch), (X, cp.value),
                        required=False, errata_ref=cp.branch)
            if b == 0 or (q == 2 and not a == b == 1):
                continue
            ne = cf.nn_closed(q, n, a, b, cf.ERRATA)
            npp = cf.nn_closed(q, n, a, b, cf.PAPER)
            res.add("closed.nn.errata", (q, n, a, b), ("oracle", ne.branch), (int(C[a, b]), ne.value))
            res.add("closed.nn.paper", (q, n, a, b), ("oracle", npp.branch), (int(C[a, b]), npp.value),
                    required=False, errata_ref=npp.branch)
            res.add("closed.consistency", (q, n, a, b), ("nn", "curve->nn"),
                    (ne.value, _try(cs.nn_via_curve, q, cf.curve_closed(q, n, a, b, cf.ERRATA).value)))
    if n == 2 and F.p > 2:
        for a in range(1, q):
            for b in range(1, q):
                res.add("closed.n2", (q, 2, a, b), ("oracle", "n2_closed"), (int(C[a, b]), cf.n2_closed(F, a, b)))
        tally = [0, 0, 0]
        for a in range(1, q):
            for b in range(1, q):
                tally[cf.n2_closed(F, a, b)] += 1
        res.add("closed.n2_census", (q,), ("exhaustive", "formula"), (tuple(tally), cf.n2_pair_census(q)))


def _check_pn(res: FieldResult, F, n: int):
    q = F.q
    for a in range(1, q):
        for b in range(1, q):
            direct = orc.count_irreducible(F, n, a, b)
            vals = [direct, _try(pnab.pn, F, n, a, b, pnab.ORACLE), _try(pnab.pn, F, n, a, b, pnab.GAUSS)]
            methods = ["enumeration", "mobius:oracle", "mobius:gauss"]
            if q in cf.CLOSED_FORM_FIELDS:
                vals.append(_try(pnab.pn_closed, q, n, a, b, cf.ERRATA))
                methods.append("mobius:closed_errata")
            res.add("pn", (q, n, a, b), methods, vals)
            lemma = pnab.pn_lemma_as_printed(F, n, a, b)
            res.add("pn.lemma_as_printed", (q, n, a, b), ("enumeration", "printed_lemma"), (direct, lemma),
                    required=False, errata_ref="pn.lemma")
            if q in cf.CLOSED_FORM_FIELDS and n >= 2:
                ps = pnab.pn_printed(q, n, a, b)
                res.add("pn.closed.paper", (q, n, a, b), ("enumeration", "printed_proposition"), (direct, ps),
                        required=False, errata_ref=f"pn.q{q}")
    total = _try(lambda: sum(pnab.pn(F, n, a, b) for a in range(q) for b in range(q)))
    res.add("pn.necklace", (q, n), ("sum P_n(a,b)", "necklace"), (total, pnab.necklace_count(q, n)))


def bound_reports(t: ft.FieldTower, C, curve_counts: dict, pn_values: dict | None = None) -> list:
    """BoundReports for one (q, n): N bounds, b = 0 bounds, curve bounds, toric and P_n bounds."""
    q, n = t.q, t.n
    F = t.fq
    out = []
    if n < 2:
        return out
    nn_b = [f(q, n) for f in bd.NN_BOUNDS]
    for a in range(1, q):
        for b in range(1, q):
            for B in nn_b:
                out.append(bd.report(B, int(C[a, b]), (a, b), [o for o in nn_b[1:] if o is not B]))
        B0 = bd.moisio_b0(q, n)
        out.append(bd.report(B0, int(C[a, 0]), (a, 0)))
        out.append(bd.report(bd.katz(q, n), int(C[a, 0]), (a, 0)))
    hw = bd.hasse_weil(q, n)
    cvt = bd.curve_via_toric(q, n)
    for (a, b), X in sorted(curve_counts.items()):
        if b:
            ihw = bd.improved_hw(q, n, False)
            out.append(bd.report(ihw, X, (a, b), [hw]))
            out.append(bd.report(cvt, X, (a, b), [ihw]))
        else:
            for corrected in (False, True):
                B = bd.improved_hw(q, n, True, corrected_center=corrected)
                out.append(bd.report(B, X, (a, b, "projective"), [hw]))
            B = bd.improved_hw(q, n, True)
            out.append(bd.report(bd.Bound("improved_hw_b0_affine", q, n, B.center, B.radius, "curve_b0"),
                                 X - 1, (a, b, "affine")))
        out.append(bd.report(hw, X, (a, b)))
    if n == 3:
        lo, hi = bd.n3_range(q)
        for a in range(1, q):
            for b in range(q):
                v = int(C[a, b])
                out.append(bd.BoundReport("n3_range", q, 3, (a, b), bd.Fraction(lo + hi, 2),
                                          bd.Surd.rational(q, bd.Fraction(hi - lo, 2)), v, lo <= v <= hi))
    if (q - 1) ** (n - 1) <= orc.TORIC_CAP:
        tb = [f(q, n) for f in bd.TORIC_BOUNDS]
        for u in range(1, q):
            y = orc.count_toric_points(F, n, u)
            for B in tb:
                out.append(bd.report(B, y, (u,), [o for o in tb if o is not B]))
    if pn_values:
        pb = [f(q, n) for f in bd.PN_BOUNDS]
        for (a, b), v in sorted(pn_values.items()):
            for B in pb:
                out.append(bd.report(B, v, (a, b), [o for o in pb if o is not B]))
    return out


def improvement_records(q: int, n: int) -> list:
    """Printed improvement claims against exact radius comparisons (findings only)."""
    recs = []
    mw = bd.moisio_wan(q, n)
    for name, claimed, B in (
        ("as_bound1<moisio_wan", bd.as_bound1_claims_improvement(q, n), bd.as_bound1(q, n)),
        ("as_bound2<moisio_wan", bd.as_bound2_claims_improvement(q, n), bd.as_bound2(q, n)),
    ):
        if claimed:
            c = bd.compare_radii(B, mw)
            recs.append(VerificationRecord("improvement", (q, n), (name, "claimed"),
                                           ({-1: "tighter", 0: "tie", 1: "looser"}[c], "tighter"),
                                           c < 0, False, None if c < 0 else name))
    tm, ti = bd.toric_mw(q, n), bd.toric_improved(q, n)
    if bd.toric_claims_improvement(q, n):
        c = bd.compare_radii(ti, tm)
        recs.append(VerificationRecord("improvement", (q, n), ("toric_improved<toric_mw", "claimed"),
                                       ({-1: "tighter", 0: "tie", 1: "looser"}[c], "tighter"),
                                       c < 0, False, None if c < 0 else "toric_improved<toric_mw"))
    if bd.curve_via_toric_applies(q, n):
        c = bd.compare_radii(bd.curve_via_toric(q, n), bd.improved_hw(q, n, False))
        recs.append(VerificationRecord("improvement", (q, n), ("curve_via_toric<improved_hw", "claimed"),
                                       ({-1: "tighter", 0: "tie", 1: "looser"}[c], "tighter"),
                                       c < 0, False, None if c < 0 else "curve_via_toric<improved_hw"))
    for b_zero in (False, True):
        c = bd.compare_radii(bd.improved_hw(q, n, b_zero), bd.hasse_weil(q, n))
        name = f"improved_hw{'_b0' if b_zero else ''}<=hasse_weil"
        recs.append(VerificationRecord("improvement", (q, n), (name, "claimed"),
                                       ({-1: "tighter", 0: "tie", 1: "looser"}[c], "not looser"),
                                       c <= 0, False, None if c <= 0 else "improved_hw"))
    return recs


def check_field(p: int, e: int, n_max: int, seed: int = 0, pn_n_max: int | None = None,
                with_bounds: bool = True) -> FieldResult:
    """Run every check on F_{p^e} for 1 <= n <= n_max."""
    q = p**e
    res = FieldResult(q)
    F = pnab.base_field(p, e, seed)
    pn_top = PN_N_MAX.get(q, 3) if pn_n_max is None else pn_n_max
    for n in range(1, n_max + 1):
        t = pnab._tower(p, e, n, seed)
        C = orc.norm_trace_census(t)
        _check_census(res, t, C)
        _check_curves(res, t, C)
        _check_lifts(res, t)
        _check_toric(res, t, C)
        _check_closed(res, t, C)
        pn_vals = None
        if n <= pn_top:
            _check_pn(res, F, n)
            pn_vals = {(a, b): v for a in range(1, q) for b in range(1, q)
                       if isinstance(v := _try(pnab.pn, F, n, a, b), int)}
        if with_bounds and n >= 2:
            curves = {(a, b): orc.count_curve_points_tracefiber(t, ft.norm_preimage(t, t.mid(a)),
                                                                 ft.trace_preimage(t, t.mid(b)))
                      for a in range(1, q) for b in range(q)}
            for r in bound_reports(t, C, curves, pn_vals):
                if r.name == "improved_hw_b0_centered":
                    # the re-centred variant is a required identity of the Gauss expansion
                    res.add("bound", (q, n) + r.instance, (r.name, "holds"), (r.holds, True))
                else:
                    res.records.append(VerificationRecord("bound", (q, n) + tuple(r.instance),
                                                          (r.name, "holds"), (r.holds, True), r.holds,
                                                          False, None if r.holds else r.name))
            res.records.extend(improvement_records(q, n))
    if q == 2 and pn_top >= 2:
        for ell in (2, 3, 5, 7, 11, 13):
            v = pnab.pn(F, ell, 1, 1, pnab.ORACLE)
            stated = bd.Fraction(2 ** (ell - 1) - 1, ell)
            res.add("pn.q2_prime", (2, ell), ("mobius:oracle", "(2^{n-1}-1)/n"), (v, stated),
                    required=False, errata_ref="pn.q2_prime")
            B = bd.q2_prime_pn(ell)
            res.add("pn.q2_prime_bound", (2, ell), ("holds",), (B.holds_for(v),), agree=B.holds_for(v))
    return res


# budgets ------------------------------------------------------------------

def estimated_cost(q: int, n: int) -> float:
    """Rough seconds for one n-level of :func:`check_field` (deterministic, no timing)."""
    return 2e-7 * q**n * q * q + 0.01


def plan_n_max(fields, budget: float | None, n_max: int | None = None) -> dict:
    """n_max per field so the summed cost estimate stays within ``budget`` seconds."""
    plan = {}
    for p, e in fields:
        q = p**e
        top = n_max if n_max is not None else DEFAULT_N_MAX.get(q, max(1, _largest_n(q, 300_000)))
        top = min(top, _largest_n(q, orc.ELEMENT_CAP))
        plan[(p, e)] = top
    if budget is None:
        return plan
    share = budget / max(len(fields), 1)
    for (p, e), top in plan.items():
        q = p**e
        spent, n = 0.0, 0
        while n < top and spent + estimated_cost(q, n + 1) <= share:
            n += 1
            spent += estimated_cost(q, n)
        plan[(p, e)] = max(n, 1)
    return plan


def _largest_n(q: int, cap: int) -> int:
    n = 1
    while q ** (n + 1) <= cap:
        n += 1
    return n


def threads() -> int:
    try:
        return max(1, int(os.environ.get("NORMTRACE_THREADS", "1")))
    except ValueError:
        return 1


def _run_one(args):
    p, e, n_max, seed = args
    return check_field(p, e, n_max, seed).records


def run_verify(fields=DEFAULT_FIELDS, n_max: int | None = None, budget: float | None = None,
               seed: int = 0, workers: int | None = None) -> list:
    """All records for the given fields, sorted canonically."""
    plan = plan_n_max(fields, budget, n_max)
    jobs = [(p, e, plan[(p, e)], seed) for p, e in fields]
    workers = workers or threads()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_run_one, jobs))
    else:
        chunks = [_run_one(j) for j in jobs]
    records = [r for chunk in chunks for r in chunk]
    return sorted(records, key=record_key)


def _part(x):
    return (0, x, "") if isinstance(x, int) and not isinstance(x, bool) else (1, 0, str(x))


def record_key(r: VerificationRecord):
    """Canonical order: check name, then instance with numbers compared numerically."""
    return (r.check, tuple(_part(x) for x in r.instance), r.methods)


def errata_ledger(records) -> list:
    """Disagreements with printed statements, one entry per branch/claim, with every witness."""
    by_ref = {}
    for r in records:
        if r.required or r.agree:
            continue
        by_ref.setdefault((r.check, r.errata_ref), []).append(r)
    return [
        {"check": check, "branch": ref, "witnesses": len(rs), "first_witness": rs[0].row()}
        for (check, ref), rs in sorted(by_ref.items(), key=lambda kv: (kv[0][0], str(kv[0][1])))
    ]


def failures(records) -> list:
    return [r for r in records if r.required and not r.agree]


__all__ = [
    "VerificationRecord", "check_field", "run_verify", "errata_ledger", "failures", "bound_reports",
    "improvement_records", "plan_n_max", "estimated_cost", "NormTraceError",
]
