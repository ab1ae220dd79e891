import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from dualsteenrod import gf2
from dualsteenrod.groebner import (
    CofactorCertificate,
    GroebnerError,
    ResourceExceeded,
    buchberger,
    in_ideal,
    is_finite_dimensional,
    normal_form,
    reduce_with_cofactors,
    standard_monomials,
)
from dualsteenrod.milnor import Trunc, zeta
from dualsteenrod.polycore import Poly, Variable, VariableTable, mono_divides, parse_poly, xi_table
from dualsteenrod.quotient import quotient_generators

PAIRS = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)]


@pytest.mark.parametrize("k,m", PAIRS)
def test_standard_monomials_match_linear_algebra(k, m):
    gens = quotient_generators(k, m)
    gb = buchberger(gens)
    finite, top = is_finite_dimensional(gb)
    assert finite
    got = {d: len(ms) for d, ms in standard_monomials(gb, top + 3).items()}
    degrees = [2**i - 1 for i in range(1, k + 1)]
    assert got == oracles.quotient_dims(degrees, [g.terms for g in gens], top + 3)


@pytest.mark.parametrize("k,m", PAIRS)
def test_basis_is_reduced(k, m):
    gb = buchberger(quotient_generators(k, m))
    leads = gb.leading
    for i, p in enumerate(gb.polys):
        for j, lt in enumerate(leads):
            assert not any(mono_divides(lt, t) for t in p.terms if (i != j or t != leads[i]))


def test_deterministic():
    a = buchberger(quotient_generators(2, 3))
    b = buchberger(list(reversed(quotient_generators(2, 3))))
    assert a.to_json() == b.to_json()


T2 = Trunc(2).table()
GB22 = buchberger(quotient_generators(2, 2))


def polys2(max_exp=20):
    mono = st.tuples(st.integers(0, max_exp), st.integers(0, 7))
    return st.sets(mono, max_size=5).map(lambda ts: Poly(T2, ts))


@settings(max_examples=50)
@given(polys2(), polys2())
def test_normal_form_is_linear_and_idempotent(a, b):
    na, nb = normal_form(a, GB22), normal_form(b, GB22)
    assert normal_form(na, GB22) == na
    assert normal_form(a + b, GB22) == na + nb


@settings(max_examples=30)
@given(polys2(8))
def test_multiples_of_generators_reduce_to_zero(c):
    for g in quotient_generators(2, 2):
        assert in_ideal(c * g, GB22)


def test_xi1_16_membership_certificate():
    gens = [zeta(3, Trunc(2)), zeta(4, Trunc(2))]
    cert = reduce_with_cofactors(Poly.var(T2, "xi1", 16), gens)
    assert isinstance(cert, CofactorCertificate)
    assert cert.verify()
    rem = reduce_with_cofactors(Poly.var(T2, "xi1", 15), gens)
    assert isinstance(rem, Poly) and rem


def test_bad_certificate_is_rejected():
    gens = (zeta(3, Trunc(2)),)
    with pytest.raises(GroebnerError):
        CofactorCertificate(Poly.var(T2, "xi1", 16), gens, (Poly.one(T2),))


def test_degree_cap():
    with pytest.raises(ResourceExceeded):
        buchberger(quotient_generators(2, 3), max_degree=20)


def test_exterior_requires_opt_in():
    t = VariableTable((Variable("xi1", 1, weight=1), Variable("b", -2, True)))
    with pytest.raises(GroebnerError):
        buchberger([parse_poly(t, "xi1*b")])


def test_exterior_spairs():
    # xi1 + xi2*b with b^2 = 0 forces xi1*b = 0 through the S-pair with b^2
    t = VariableTable((Variable("xi1", 1, weight=1), Variable("xi2", 3, weight=1), Variable("b", -2, True)))
    gb = buchberger([parse_poly(t, "xi1 + xi2*b")], allow_exterior=True)
    assert in_ideal(parse_poly(t, "xi1*b"), gb)
    assert not in_ideal(parse_poly(t, "xi2*b"), gb)


def test_infinite_quotient_detected():
    t = xi_table(2)
    finite, _ = is_finite_dimensional(buchberger([parse_poly(t, "xi1^3")]))
    assert not finite


def test_gf2_kernel_and_rank():
    vecs = [0b011, 0b101, 0b110, 0b111]
    assert gf2.rank(vecs) == 3
    ker = gf2.kernel(vecs)
    assert len(ker) == 1 and gf2.combine(vecs, ker[0]) == 0


@given(st.lists(st.integers(0, 2**12 - 1), max_size=10))
def test_gf2_rank_matches_oracle(vecs):
    as_sets = [{i for i in range(12) if v >> i & 1} for v in vecs]
    assert gf2.rank(vecs) == oracles.rank(as_sets)
    for mask in gf2.kernel(vecs):
        assert gf2.combine(vecs, mask) == 0
    assert len(gf2.kernel(vecs)) == len(vecs) - gf2.rank(vecs)
