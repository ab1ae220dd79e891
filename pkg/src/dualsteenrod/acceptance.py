"""The acceptance criteria as plain functions returning (passed, detail)."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .comodule import Coalgebra, cobar_ext, polynomial_dims, trivial_comodule
from .groebner import buchberger, monomial_ideal_dims, normal_form, reduce_with_cofactors
from .milnor import Full, Trunc, q1, q1_generator, verify_milnor_identity, zeta
from .polycore import Poly, adams_leading_part, parse_poly, xi_table
from .quotient import (
    build_quotient,
    closed_form_poincare,
    conjecture_report,
    delta,
    frobenius_check,
    gaussian_binomial_q2,
    poincare_series,
    regularity_check,
    regularity_check_generators,
    split_dims,
)
from .sseq import (
    RANK2_END,
    RANK3_END,
    adams_run,
    differential_schedule,
    page_factorization_check,
    reconcile_with_abutment,
)

QUOTIENT_PAIRS = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)]


def milnor_identity():
    bad = [n for n in range(1, 11) if not verify_milnor_identity(n)]
    return not bad, f"n=1..10 failures={bad}"


def q1_laws():
    table = Full(7).table()
    bad = []
    for j in range(1, 7):
        xj = Poly.var(table, f"xi{j}")
        expect = Poly.var(table, f"xi{j + 1}") + Poly.var(table, "xi1") * Poly.var(table, f"xi{j}", 2)
        if q1(xj) != expect or q1_generator(j, table) != expect:
            bad.append(f"xi{j}")
        if q1(zeta(j, Full(7))) != zeta(j + 1, Full(7)):
            bad.append(f"zeta{j}")
    return not bad, f"j=1..6 failures={bad}"


def quotient_numerology():
    parts, ok = [], True
    for k, m in QUOTIENT_PAIRS:
        qr = build_quotient(k, m, check=False)
        dims = qr.dims()
        top = 2 * (2**m - 1) * (2**k - 1)
        good = (qr.dimension == gaussian_binomial_q2(m + k, k)
                and poincare_series(qr) == closed_form_poincare(k, m)
                and qr.top_degree == top
                and frobenius_check(qr).ok
                and all(dims.get(t, 0) == dims.get(top - t, 0) for t in range(top + 1)))
        ok &= good
        parts.append(f"({k},{m}) dim={qr.dimension} top={qr.top_degree} {'ok' if good else 'FAIL'}")
    return ok, "; ".join(parts)


def regularity():
    results = {pair: regularity_check(*pair) for pair in QUOTIENT_PAIRS}
    table = Trunc(2).table()
    control = regularity_check_generators([parse_poly(table, "xi1*xi2^2"), parse_poly(table, "xi2^5")])
    ok = all(results.values()) and not control
    return ok, f"pairs={sum(results.values())}/5 control={int(control)}"


def membership_certificate():
    table = Trunc(2).table()
    gens = [zeta(3, Trunc(2)), zeta(4, Trunc(2))]
    gb = buchberger(gens)
    cert = reduce_with_cofactors(Poly.var(table, "xi1", 16), gens)
    certified = not isinstance(cert, Poly) and cert.verify()
    nf16 = normal_form(Poly.var(table, "xi1", 16), gb)
    nf15 = normal_form(Poly.var(table, "xi1", 15), gb)
    ok = certified and not nf16 and bool(nf15)
    return ok, f"NF(xi1^16)={nf16} certificate={certified} NF(xi1^15)!=0: {bool(nf15)}"


def rank2_spectral_sequence():
    pages = adams_run(2, 2, 0, 26)
    last = pages[-1]
    table = xi_table(2)
    expected = monomial_ideal_dims(table, [parse_poly(table, s) for s in ("xi1*xi2^2", "xi2^5", "xi1^16")],
                                   last.trusted_top)
    got = last.stem_dims()
    deficit = reconcile_with_abutment(last, split_dims(2, 2, 0))
    ok = last.r == 16 and got == expected and not deficit
    return ok, f"E{last.r} total={sum(got.values())} matches={got == expected} deficit={deficit}"


def schedules():
    def targets(k, m):
        return [(a.r, a.target.restrict(Trunc(k).table())) for a in differential_schedule(k, m)]

    t = Trunc(2).table()
    want22 = [(3, parse_poly(t, "xi1*xi2^2")), (5, parse_poly(t, "xi2^5"))]
    t3 = Trunc(3).table()
    want33 = [(3, parse_poly(t3, "xi1*xi3^2")), (5, parse_poly(t3, "xi2*xi3^4")), (9, parse_poly(t3, "xi3^9"))]
    ok = targets(2, 2) == want22 and targets(3, 3) == want33
    checked = 0
    for k in range(1, 4):
        for m in range(k, 6):
            for i, (r, tgt) in enumerate(targets(k, m), start=1):
                lead = adams_leading_part(zeta(m + i, Trunc(k)))
                ok &= tgt == lead and r == sum(lead.single())
                checked += 1
    return ok, f"(2,2),(3,3) exact; {checked} targets match leading parts"


def cobar():
    C = Coalgebra()
    ext = cobar_ext(trivial_comodule(), C, 31)
    ones = sorted(t for (s, t), n in ext.items() if s == 1 and n == 1)
    only = all(n == 1 for (s, t), n in ext.items() if s == 1)
    poly = {key: n for key, n in ext.items() if key[1] <= 20} == \
        polynomial_dims([(1, 2**i) for i in range(1, 5)], 20)
    trunc = cobar_ext(trivial_comodule(), Coalgebra(4), 16) == polynomial_dims([(1, 2), (1, 4)], 16)
    ok = ones == [2, 4, 8, 16] and only and poly and trunc
    return ok, f"Ext^1 at t={ones} polynomial={poly} truncated={trunc}"


def splitting():
    tops = {}
    for k, m, n in [(1, 1, 1), (2, 2, 1), (2, 3, 2)]:
        tops[(k, m, n)] = max(split_dims(k, m, n)) == delta(k, m, n)
    fact = page_factorization_check(2, 2, 1) and page_factorization_check(1, 1, 1, 20)
    ok = all(tops.values()) and fact
    return ok, f"top degrees={list(tops.values())} factorization={fact}"


def _end_duality(run):
    pages = run.run()
    residual = run.duality(pages[-1])
    return not residual, f"E{pages[-1].r} total={pages[-1].total_dim()} residual={residual}"


def rank2_duality():
    return _end_duality(RANK2_END)


def rank3_duality():
    return _end_duality(RANK3_END)


def conjecture():
    lines, ok = [], True
    for k in (2, 3):
        rep = conjecture_report(k)
        lines.extend(rep.lines())
        if k == 2:
            ok = rep.vanishing_ok and rep.top_generator_ok
    return ok, " | ".join(lines)


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    suite: str
    check: object
    gating: bool = True


CRITERIA = [
    Criterion(1, "milnor identity", "core", milnor_identity),
    Criterion(2, "Q1 laws", "core", q1_laws),
    Criterion(3, "quotient numerology", "core", quotient_numerology),
    Criterion(4, "regularity", "core", regularity),
    Criterion(5, "membership certificate", "core", membership_certificate),
    Criterion(6, "rank-2 spectral sequence", "sseq", rank2_spectral_sequence),
    Criterion(7, "differential schedules", "sseq", schedules),
    Criterion(8, "cobar Ext", "sseq", cobar),
    Criterion(9, "splitting and top degree", "sseq", splitting),
    Criterion(10, "rank-2 endomorphism duality", "sseq", rank2_duality),
    Criterion(11, "rank-3 endomorphism duality", "sseq", rank3_duality),
    Criterion(12, "vanishing patterns", "core", conjecture, gating=False),
]


def select(suite="all"):
    if suite not in ("core", "sseq", "all"):
        raise ValueError(f"unknown suite {suite!r}")
    return [c for c in CRITERIA if suite == "all" or c.suite == suite]


def run_criterion(c):
    start = time.perf_counter()
    try:
        ok, detail = c.check()
    except Exception as exc:  # a crash is a failure, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return bool(ok), detail, time.perf_counter() - start


def format_line(c, ok, detail, seconds):
    status = "PASS" if ok else "FAIL"
    tag = "" if c.gating else " (non-gating)"
    return f"[{status}] {c.number:>2}. {c.name}{tag} ({seconds:.2f}s): {detail}"


def run_suite(suite="all", emit=print):
    """Run the selected criteria; returns True when every gating one passes."""
    all_ok = True
    for c in select(suite):
        ok, detail, seconds = run_criterion(c)
        emit(format_line(c, ok, detail, seconds))
        if c.gating:
            all_ok &= ok
    return all_ok
