import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from dualsteenrod.polycore import (
    ExponentOverflow,
    Poly,
    TableMismatch,
    Variable,
    VariableTable,
    adams_leading_part,
    binom_mod2,
    monomials_of_degree,
    parse_poly,
    xi_table,
)

XI3 = xi_table(3)
MIXED = VariableTable((Variable("xi1", 1, weight=1), Variable("xi2", 3, weight=1),
                       Variable("b2", -2, True), Variable("b4", -4, True), Variable("e8", 8)))
EXT = (2, 3)


def polys(table, max_exp=3):
    mono = st.tuples(*[st.integers(0, 1 if v.exterior else max_exp) for v in table.variables])
    return st.sets(mono, max_size=6).map(lambda ts: Poly(table, ts))


@given(polys(XI3), polys(XI3), polys(XI3))
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + a == Poly.zero(XI3)
    assert a * Poly.one(XI3) == a


@given(polys(MIXED), polys(MIXED), polys(MIXED))
def test_ring_axioms_with_exterior(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys(MIXED), polys(MIXED))
def test_product_matches_oracle(a, b):
    assert (a * b).terms == oracles.mul(a.terms, b.terms, EXT)


@given(polys(MIXED))
def test_square_is_frobenius(a):
    assert a.square() == a * a
    assert a ** 4 == a * a * a * a


@given(polys(XI3))
def test_json_round_trip(a):
    assert Poly.from_json(a.to_json()) == a
    assert json.loads(a.to_json()) == a.to_json_obj()


@given(polys(MIXED))
def test_text_round_trip(a):
    assert parse_poly(MIXED, str(a)) == a


def test_exterior_squares_vanish():
    b = Poly.var(MIXED, "b2")
    assert not b * b
    assert (b + Poly.var(MIXED, "xi1")) ** 2 == Poly.var(MIXED, "xi1", 2)


def test_negative_degrees():
    b = parse_poly(MIXED, "xi2*b2")
    assert b.degree == 1 and b.weights() == {1}


def test_leading_term_is_graded_revlex():
    p = parse_poly(XI3, "xi1^7 + xi1^4*xi2 + xi1*xi2^2")
    assert XI3.format_monomial(p.leading_monomial()) == "xi1^7"


def test_adams_leading_part():
    p = parse_poly(XI3, "xi1^7 + xi1^4*xi2 + xi1*xi2^2")
    assert adams_leading_part(p) == parse_poly(XI3, "xi1*xi2^2")


def test_table_mismatch():
    with pytest.raises(TableMismatch):
        Poly.var(XI3, "xi1") + Poly.var(xi_table(2), "xi1")


def test_xi_degree_enforced():
    with pytest.raises(ValueError):
        VariableTable((Variable("xi2", 4),))


def test_exponent_overflow():
    with pytest.raises(ExponentOverflow):
        Poly.var(XI3, "xi1", 2**30) * Poly.var(XI3, "xi1", 2**30)


@given(st.integers(0, 200), st.integers(0, 200))
def test_binomial_parity(j, i):
    from math import comb
    assert binom_mod2(j, i) == (comb(j, i) % 2 if i <= j else 0)


@settings(max_examples=20)
@given(st.integers(0, 30))
def test_monomials_of_degree(d):
    got = sorted(monomials_of_degree(XI3, d))
    assert got == sorted(oracles.monomials([1, 3, 7], d))
    assert all(XI3.degree(m) == d for m in got)


def test_monomials_with_exterior():
    ms = monomials_of_degree(MIXED, -6)
    assert [MIXED.format_monomial(m) for m in ms] == ["b2*b4"]
