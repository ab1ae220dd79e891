import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from dualsteenrod.milnor import (
    Full,
    Trunc,
    TruncationError,
    leading_term_of_truncated_zeta,
    q1,
    verify_milnor_identity,
    xi,
    zeta,
    zeta_leading_term,
)
from dualsteenrod.polycore import Poly, parse_poly, xi_table


@pytest.mark.parametrize("n", range(1, 11))
def test_milnor_identity(n):
    assert verify_milnor_identity(n)


@pytest.mark.parametrize("n,k", [(n, k) for k in (1, 2, 3, 4) for n in range(0, 9)])
def test_zeta_matches_composition_oracle(n, k):
    if n == 0:
        assert zeta(0, Trunc(k)) == Poly.one(Trunc(k).table())
        return
    assert zeta(n, Trunc(k)).terms == oracles.zeta_by_compositions(n, k)


def test_small_zetas():
    t = Full(3).table()
    assert zeta(1, Full(3)) == parse_poly(t, "xi1")
    assert zeta(2, Full(3)) == parse_poly(t, "xi2 + xi1^3")
    assert zeta(3, Full(3)) == parse_poly(t, "xi3 + xi1^4*xi2 + xi1*xi2^2 + xi1^7")


def test_zeta4_truncated():
    t = Trunc(2).table()
    assert zeta(4, Trunc(2)) == parse_poly(t, "xi2^5 + xi1^3*xi2^4 + xi1^9*xi2^2 + xi1^12*xi2 + xi1^15")


def test_zeta_is_homogeneous():
    for n in range(1, 9):
        z = zeta(n, Trunc(3))
        assert z.is_homogeneous() and z.degree == 2**n - 1


def test_full_needs_enough_generators():
    with pytest.raises(TruncationError):
        zeta(5, Full(3))
    with pytest.raises(TruncationError):
        xi(4, Full(3))
    assert not xi(4, Trunc(3))


@pytest.mark.parametrize("j", range(1, 7))
def test_q1_on_generators_and_conjugates(j):
    t = Full(7).table()
    assert q1(Poly.var(t, f"xi{j}")) == parse_poly(t, f"xi{j + 1} + xi1*xi{j}^2")
    assert q1(zeta(j, Full(7))) == zeta(j + 1, Full(7))


@given(st.sets(st.tuples(st.integers(0, 4), st.integers(0, 2)), max_size=4))
def test_q1_additive_on_equal_degree(monos):
    t = xi_table(3)
    by_degree = {}
    for a, b in monos:
        by_degree.setdefault(a + 3 * b, []).append((a, b, 0))
    for ms in by_degree.values():
        total = Poly(t, ms)
        parts = Poly.zero(t)
        for m in ms:
            parts = parts + q1(Poly.monomial(t, m))
        assert q1(total) == parts


def test_q1_rejects_inhomogeneous():
    t = xi_table(3)
    with pytest.raises(ValueError):
        q1(parse_poly(t, "xi1 + xi2"))


def test_q1_degree():
    t = xi_table(4)
    p = parse_poly(t, "xi1^2*xi2")
    assert q1(p).degree == 2 * p.degree + 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_leading_term_closed_form(k):
    for n in range(k + 1, 3 * k + 4):
        lead = leading_term_of_truncated_zeta(n, k)
        assert lead.single() == zeta_leading_term(n, k)


def test_leading_term_examples():
    assert zeta_leading_term(3, 2) == (1, 2)
    assert zeta_leading_term(4, 2) == (0, 5)
    assert zeta_leading_term(6, 3) == (0, 0, 9)
    with pytest.raises(ValueError):
        zeta_leading_term(2, 2)
