import json
from dataclasses import replace

import pytest

import oracles
from dualsteenrod.chart import render_svg, render_text
from dualsteenrod.polycore import Poly, parse_poly, xi_table
from dualsteenrod.quotient import split_dims
from dualsteenrod.sseq import (
    HIDDEN_EXTENSIONS,
    RANK2_END,
    RANK3_END,
    DifferentialAssignment,
    SpectralSequenceError,
    adams_run,
    differential_schedule,
    e2_page,
    page_factorization_check,
    pages_to_json,
    reconcile_with_abutment,
    run_differential,
)

XI2 = xi_table(2)
T = 26


def ring_dims(degrees, rels, bound):
    return oracles.quotient_dims(degrees, rels, bound)


def shifted(dims, shift):
    return {d + shift: n for d, n in dims.items()}


def added(*ds):
    out = {}
    for d in ds:
        for k, v in d.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def trim(d, top):
    return {k: v for k, v in d.items() if k <= top}


def mono(s):
    """Exponent set of a monomial string over xi1, xi2."""
    return parse_poly(XI2, s).terms



@pytest.fixture(scope="module")
def run22():
    return adams_run(2, 2, 0, T)


def test_range_checks():
    with pytest.raises(ValueError):
        e2_page(2, 1)
    with pytest.raises(ValueError):
        differential_schedule(1, 0)
    with pytest.raises(ValueError):
        differential_schedule(3, 2)


def test_e2_dims():
    page = e2_page(2, 2, 0, T)
    free = ring_dims([1, 3], [], T)
    expected = added(*(shifted(free, 8 * j) for j in range(4)))
    assert page.stem_dims() == trim(expected, T - 1)
    assert e2_page(2, 2, 1, 40).algebra.relations[0] == Poly.var(e2_page(2, 2, 1, 40).table, "e8", 8)


def test_schedules():
    def show(k, m):
        return [a.describe(a.target.table) for a in differential_schedule(k, m)]

    assert show(2, 2) == ["d3(e8) = xi1*xi2^2", "d5(e8^2) = xi2^5"]
    assert show(3, 3) == ["d3(e16) = xi1*xi3^2", "d5(e16^2) = xi2*xi3^4", "d9(e16^4) = xi3^9"]
    assert show(2, 3) == ["d5(e16) = xi2^5", "d11(e16^2) = xi1*xi2^10"]
    assert show(1, 1) == ["d3(e4) = xi1^3"]


def test_rank2_pages(run22):
    e2, e4, e6, e16 = run22
    assert [p.r for p in run22] == [2, 4, 6, 16]
    top = T - 1
    a = ring_dims([1, 3], [mono("xi1*xi2^2")], top)
    assert e4.stem_dims() == trim(added(a, shifted(a, 16)), top)
    b = ring_dims([1, 3], [mono("xi1*xi2^2"), mono("xi2^5")], top)
    c = ring_dims([1, 3], [mono("xi2^2")], top)
    assert e6.stem_dims() == trim(added(b, shifted(c, 17)), top)
    q = ring_dims([1, 3], [mono("xi1*xi2^2"), mono("xi2^5"), mono("xi1^16")], top)
    assert e16.stem_dims() == q


def test_rank2_abutment(run22):
    target = split_dims(2, 2, 0)
    assert reconcile_with_abutment(run22[-1], target) == []
    deficit = reconcile_with_abutment(run22[2], target)
    assert deficit[0] == (16, 1)


def test_rank1_abutment():
    pages = adams_run(1, 1, 0)
    assert pages[-1].r == 4
    assert reconcile_with_abutment(pages[-1], split_dims(1, 1, 0)) == []


def test_rank3_schedule_alone_leaves_deficits():
    pages = adams_run(3, 3, 0)
    deficit = reconcile_with_abutment(pages[-1], split_dims(3, 3, 0))
    assert deficit and deficit[0] == (32, 1)
    assert all(n > 0 for _, n in deficit)


def test_bookkeeping(run22):
    for before, after in zip(run22, run22[1:]):
        for src, tgt, n in after.differentials(after.r - 1):
            assert tgt == (src[0] - 1, src[1] + after.r - 1)
            assert n <= before.dim(src) and n <= before.dim(tgt)


def test_square_nonzero_is_rejected():
    e2 = e2_page(2, 2, 0, T)
    t = e2.table
    bad = DifferentialAssignment(3, t.unit("e8"), parse_poly(t, "xi1*xi2^2"))  # every e-power allowed
    with pytest.raises(SpectralSequenceError):
        run_differential(replace(e2, r=3), [bad])


def test_wrong_filtration_rejected():
    e2 = e2_page(2, 2, 0, T)
    t = e2.table
    bad = DifferentialAssignment(2, t.unit("e8"), parse_poly(t, "xi1*xi2^2"), None, "bad", 2)
    with pytest.raises(SpectralSequenceError):
        run_differential(e2, [bad])


def test_negative_deficit_is_an_error(run22):
    with pytest.raises(SpectralSequenceError):
        reconcile_with_abutment(run22[-1], {0: 2})


@pytest.mark.parametrize("k,m,n,bound", [(1, 1, 1, 20), (2, 2, 1, 40), (1, 1, 0, None)])
def test_page_factorization(k, m, n, bound):
    assert page_factorization_check(k, m, n, bound)


def test_rank2_endomorphisms():
    pages = RANK2_END.run()
    final = pages[-1]
    stems = sorted(d for d, n in final.stem_dims().items() for _ in range(n))
    assert stems == [-2, 0, 1, 3, 4, 6, 6, 9, 9, 12, 12, 14, 15, 17, 18, 20]
    assert RANK2_END.duality(final) == []
    # d15 family vanishes after base change
    assert pages[-2].stem_dims() == final.stem_dims()


def test_rank3_endomorphisms():
    final = RANK3_END.run()[-1]
    assert final.r == 10
    assert RANK3_END.duality(final) == []


def test_hidden_extensions_are_flagged():
    for entry in HIDDEN_EXTENSIONS.values():
        assert entry["verified"] is False
        assert "not machine-verified" in entry["note"]


def test_page_json_round_trip(run22):
    objs = pages_to_json(run22)
    for o in objs:
        assert json.loads(json.dumps(o)) == o
    assert run22[0].to_json(following=run22[1]) == json.dumps(objs[0], separators=(",", ":"))


def test_arrow_count_is_rank(run22):
    e4, e6 = run22[1], run22[2]
    obj = e4.to_json_obj(interior=False, following=e6)
    ranks = sum(n for _, _, n in e6.differentials(5))
    assert len(obj["differentials"]) == ranks
    assert render_svg(obj).count("<line") == ranks


def test_chart_single_class():
    svg = render_svg({"r": 2, "entries": [[0, 0, 1]], "differentials": []})
    assert svg.count("<circle") == 1 and svg.count("<line") == 0


def test_chart_dot_count():
    page = e2_page(2, 2, 0, 21)
    svg = render_svg(page, boundary=21)
    assert svg.count("<circle") == page.total_dim()
    assert render_svg(page) == render_svg(page)
    text = render_text(page)
    assert text.startswith("E2")
