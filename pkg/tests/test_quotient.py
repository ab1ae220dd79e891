import pytest

import oracles
from dualsteenrod.polycore import Variable, VariableTable, parse_poly, xi_table
from dualsteenrod.groebner import ResourceExceeded
from dualsteenrod.quotient import (
    IntSeries,
    InvariantFailure,
    build_quotient,
    closed_form_poincare,
    conjecture_report,
    delta,
    frobenius_check,
    gaussian_binomial_q2,
    poincare_series,
    quotient_from_generators,
    regularity_check,
    regularity_check_generators,
    split_dims,
)

PAIRS = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)]
# [k, m, dimension, top degree]; dimensions are Gaussian binomials at q = 2
EXPECTED = {(1, 1): (3, 2), (1, 2): (7, 6), (2, 2): (35, 18), (2, 3): (155, 42), (3, 3): (1395, 98)}


@pytest.mark.parametrize("n,k", [(n, k) for n in range(7) for k in range(n + 1)])
def test_gaussian_binomial_matches_subspace_count(n, k):
    assert gaussian_binomial_q2(n, k) == oracles.gaussian_binomial(n, k)


@pytest.mark.parametrize("k,m", PAIRS)
def test_quotient_numerology(k, m):
    qr = build_quotient(k, m)
    dim, top = EXPECTED[(k, m)]
    assert qr.dimension == dim == gaussian_binomial_q2(m + k, k)
    assert qr.top_degree == top == 2 * (2**m - 1) * (2**k - 1)
    assert poincare_series(qr) == closed_form_poincare(k, m)
    dims = qr.dims()
    assert all(dims.get(t, 0) == dims.get(top - t, 0) for t in range(top + 1))


def test_poincare_22_coefficients():
    assert list(closed_form_poincare(2, 2).coeffs) == [1, 1, 1, 2, 2, 2, 3, 2, 2, 3, 2, 2, 3, 2, 2, 2, 1, 1, 1]


@pytest.mark.parametrize("k,m", PAIRS)
def test_frobenius(k, m):
    report = frobenius_check(build_quotient(k, m))
    assert report.ok and report.top_dim == 1
    assert len(report.rows) == report.top_degree + 1


def test_non_frobenius_counterexample():
    # F2[x, y]/(x^2, xy, y^2): top degree 1 is two-dimensional
    t = VariableTable((Variable("x", 1), Variable("y", 1)))
    qr = quotient_from_generators([parse_poly(t, s) for s in ("x^2", "x*y", "y^2")])
    report = frobenius_check(qr)
    assert report.top_dim == 2 and not report.ok
    assert 1 in report.failures()


def test_infinite_quotient_rejected():
    t = xi_table(2)
    with pytest.raises(InvariantFailure):
        quotient_from_generators([parse_poly(t, "xi1^2")])


@pytest.mark.parametrize("k,m", PAIRS)
def test_regularity(k, m):
    assert regularity_check(k, m)


def test_regularity_control():
    t = xi_table(2)
    assert not regularity_check_generators([parse_poly(t, "xi1*xi2^2"), parse_poly(t, "xi2^5")])


def test_resource_cap():
    with pytest.raises(ResourceExceeded):
        build_quotient(4, 4, max_dim=1000)


@pytest.mark.parametrize("k,m,n", [(1, 1, 1), (2, 2, 1), (2, 3, 2), (1, 2, 0)])
def test_split_top_degree(k, m, n):
    dims = split_dims(k, m, n)
    assert max(dims) == delta(k, m, n)
    assert sum(dims.values()) == 2**n * gaussian_binomial_q2(m + k, k)
    assert all(dims.get(t, 0) == dims.get(delta(k, m, n) - t, 0) for t in range(delta(k, m, n) + 1))


def test_delta_matches_top_degree():
    for k, m in PAIRS:
        assert delta(k, m) == EXPECTED[(k, m)][1]


def test_int_series_division():
    a = IntSeries([1, 0, -1])
    b = IntSeries([1, -1])
    assert a.divexact(b) == IntSeries([1, 1])
    with pytest.raises(ArithmeticError):
        IntSeries([1, 0, 0, 1]).divexact(IntSeries([1, 0, -1]))


def test_conjecture_patterns():
    rep = conjecture_report(2)
    assert rep.smallest_vanishing == {1: 16}
    assert rep.top_generator_ok
    rep3 = conjecture_report(3)
    assert rep3.smallest_vanishing == {1: 64, 2: 32}
    assert rep3.top_generator_ok
