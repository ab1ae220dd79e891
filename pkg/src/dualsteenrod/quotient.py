"""Finite quotients A<k>_*/(zeta_(m+1), ..., zeta_(m+k)) and their numerology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from . import gf2
from .groebner import (
    ResourceExceeded,
    buchberger,
    is_finite_dimensional,
    normal_form,
    standard_monomials,
)
from .milnor import Trunc, zeta
from .polycore import Poly

DEFAULT_MAX_DIM = 10**5
DEFAULT_MAX_DEGREE = 2**14


class InvariantFailure(AssertionError):
    """A structural property that must hold for valid input did not."""


# ---------------------------------------------------------------- numerology

def gaussian_binomial_q2(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    num = den = 1
    for i in range(1, k + 1):
        num *= 2 ** (n - k + i) - 1
        den *= 2**i - 1
    q, r = divmod(num, den)
    assert r == 0
    return q


def delta(k: int, m: int, n: int = 0) -> int:
    """Top degree 2^(m+k+n+1) - 2^(m+1) - 2^(k+1) + 2."""
    return 2 ** (m + k + n + 1) - 2 ** (m + 1) - 2 ** (k + 1) + 2


class IntSeries:
    """Integer polynomial in t, stored as a coefficient tuple (index = power)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_dims(cls, dims: Dict[int, int]):
        if not dims:
            return cls(())
        if min(dims) < 0:
            raise ValueError("IntSeries needs non-negative exponents")
        c = [0] * (max(dims) + 1)
        for d, n in dims.items():
            c[d] = n
        return cls(c)

    def __eq__(self, other):
        return isinstance(other, IntSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntSeries({list(self.coeffs)})"

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return IntSeries(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntSeries(out)

    def divexact(self, other):
        """Exact polynomial division; raises if there is a remainder."""
        num = list(self.coeffs)
        den = other.coeffs
        if not den:
            raise ZeroDivisionError
        if den[0] not in (1, -1):
            raise ValueError("divisor must have unit constant term")
        if len(num) < len(den):
            if any(num):
                raise ArithmeticError("inexact division")
            return IntSeries(())
        q = [0] * (len(num) - len(den) + 1)
        # divide from the top
        lead = den[-1]
        for i in range(len(q) - 1, -1, -1):
            c, r = divmod(num[i + len(den) - 1], lead)
            if r:
                raise ArithmeticError("inexact division")
            q[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
        if any(num):
            raise ArithmeticError("inexact division")
        return IntSeries(q)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, t):
        return sum(c * t**i for i, c in enumerate(self.coeffs))

    def as_dims(self):
        return {i: c for i, c in enumerate(self.coeffs) if c}


def _one_minus_t(d):
    c = [0] * (d + 1)
    c[0] = 1
    c[d] -= 1
    return IntSeries(c)


def rational_poincare(numerator_degrees, denominator_degrees) -> IntSeries:
    num = IntSeries([1])
    for d in numerator_degrees:
        num = num * _one_minus_t(d)
    den = IntSeries([1])
    for d in denominator_degrees:
        den = den * _one_minus_t(d)
    return num.divexact(den)


def closed_form_poincare(k: int, m: int) -> IntSeries:
    """prod (1 - t^(2^(m+i)-1)) / prod (1 - t^(2^i-1)), i = 1..k."""
    return rational_poincare([2 ** (m + i) - 1 for i in range(1, k + 1)],
                             [2**i - 1 for i in range(1, k + 1)])


# ---------------------------------------------------------------- quotient rings

@dataclass(frozen=True)
class QuotientRing:
    table: object
    gb: object
    basis: Dict[int, List[tuple]]
    top_degree: int
    k: int | None = None
    m: int | None = None
    _nf_cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def dims(self):
        return {d: len(ms) for d, ms in self.basis.items()}

    @property
    def dimension(self):
        return sum(len(ms) for ms in self.basis.values())

    def normal_form(self, p):
        return normal_form(p, self.gb)

    def monomial_nf(self, mono):
        hit = self._nf_cache.get(mono)
        if hit is None:
            hit = normal_form(Poly.monomial(self.table, mono), self.gb)
            self._nf_cache[mono] = hit
        return hit


def check_feasible(k, m, max_dim=DEFAULT_MAX_DIM, max_degree=DEFAULT_MAX_DEGREE):
    dim = gaussian_binomial_q2(m + k, k)
    top = 2 * (2**m - 1) * (2**k - 1)
    if dim > max_dim:
        raise ResourceExceeded(f"predicted dimension {dim} exceeds cap {max_dim}")
    if top > max_degree:
        raise ResourceExceeded(f"top degree {top} exceeds cap {max_degree}")
    return dim, top


def _degree_cap(k, m, top):
    # an S-pair lcm has degree at most the sum of two leading-term degrees
    return 2 * max(top + 1, 2 ** (m + k) - 1)


def quotient_generators(k, m):
    return [zeta(m + i, Trunc(k)) for i in range(1, k + 1)]


def quotient_from_generators(gens, degree_cap=None, k=None, m=None):
    """Quotient of a polynomial ring by homogeneous generators; must be finite."""
    gb = buchberger(gens, max_degree=degree_cap)
    finite, top = is_finite_dimensional(gb)
    if not finite:
        raise InvariantFailure("quotient is infinite-dimensional")
    basis = standard_monomials(gb, top)
    return QuotientRing(gb.table, gb, basis, top, k, m)


def build_quotient(k: int, m: int, max_dim=DEFAULT_MAX_DIM, max_degree=DEFAULT_MAX_DEGREE,
                   check=True) -> QuotientRing:
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    dim, top = check_feasible(k, m, max_dim, max_degree)
    qr = quotient_from_generators(quotient_generators(k, m), degree_cap=_degree_cap(k, m, top), k=k, m=m)
    if check:
        dims = qr.dims()
        if qr.top_degree != top:
            raise InvariantFailure(f"top degree {qr.top_degree} != {top}")
        if dims.get(top) != 1:
            raise InvariantFailure("top degree is not one-dimensional")
        if any(dims.get(t, 0) != dims.get(top - t, 0) for t in range(top + 1)):
            raise InvariantFailure("dimension sequence is not palindromic")
        if qr.dimension != dim:
            raise InvariantFailure(f"dimension {qr.dimension} != {dim}")
    return qr


def poincare_series(qr: QuotientRing) -> IntSeries:
    return IntSeries.from_dims(qr.dims())


@dataclass
class FrobeniusRow:
    degree: int
    rows: int
    cols: int
    rank: int

    @property
    def ok(self):
        return self.rows == self.cols == self.rank


@dataclass
class FrobeniusReport:
    top_degree: int
    top_dim: int
    rows: list

    @property
    def ok(self):
        return self.top_dim == 1 and all(r.ok for r in self.rows)

    def failures(self):
        return [r.degree for r in self.rows if not r.ok]

    def lines(self):
        out = [f"top_degree={self.top_degree} top_dim={self.top_dim}"]
        for r in self.rows:
            out.append(f"{r.degree},{r.rows}x{r.cols},rank={r.rank},{'ok' if r.ok else 'SINGULAR'}")
        return out


def frobenius_check(qr: QuotientRing) -> FrobeniusReport:
    """Rank of the multiplication pairing into the top degree, for every t."""
    top = qr.top_degree
    top_basis = qr.basis.get(top, [])
    report = FrobeniusReport(top, len(top_basis), [])
    # the pairing reads off one fixed top-degree basis monomial
    top_mono = top_basis[0] if top_basis else None
    for t in range(0, top + 1):
        left = qr.basis.get(t, [])
        right = qr.basis.get(top - t, [])
        vecs = []
        for x in left:
            v = 0
            for j, y in enumerate(right):
                prod = tuple(a + b for a, b in zip(x, y))
                if top_mono is not None and top_mono in qr.monomial_nf(prod).terms:
                    v |= 1 << j
            vecs.append(v)
        report.rows.append(FrobeniusRow(t, len(left), len(right), gf2.rank(vecs)))
    return report


def regularity_check_generators(gens, degree_cap=None) -> bool:
    """Finite-dimensional and Hilbert series equal to the complete-intersection formula."""
    gb = buchberger(gens, max_degree=degree_cap)
    finite, top = is_finite_dimensional(gb)
    if not finite:
        return False
    table = gb.table
    dims = {d: len(ms) for d, ms in standard_monomials(gb, top).items()}
    try:
        expected = rational_poincare([g.degree for g in gens], [v.degree for v in table.variables])
    except ArithmeticError:
        return False
    return IntSeries.from_dims(dims) == expected


def regularity_check(k, m, max_dim=DEFAULT_MAX_DIM, max_degree=DEFAULT_MAX_DEGREE) -> bool:
    _, top = check_feasible(k, m, max_dim, max_degree)
    return regularity_check_generators(quotient_generators(k, m), degree_cap=_degree_cap(k, m, top))


def split_dims(k, m, n, qr=None):
    """Dimensions of quotient(k, m) tensored with F2{e_(j 2^(m+k+1)) : 0 <= j < 2^n}."""
    qr = qr or build_quotient(k, m)
    step = 2 ** (m + k + 1)
    out = {}
    for j in range(2**n):
        for d, c in qr.dims().items():
            out[d + j * step] = out.get(d + j * step, 0) + c
    return dict(sorted(out.items()))


# ---------------------------------------------------------------- conjectural patterns

@dataclass
class ConjectureReport:
    k: int
    smallest_vanishing: dict  # j -> smallest e with xi_j^e = 0
    predicted_vanishing: dict
    top_generator_ok: bool

    @property
    def vanishing_ok(self):
        return self.smallest_vanishing == self.predicted_vanishing

    def lines(self):
        out = []
        for j in sorted(self.predicted_vanishing):
            out.append(f"k={self.k} xi_{j}: smallest vanishing power {self.smallest_vanishing[j]}"
                       f" (pattern predicts {self.predicted_vanishing[j]})")
        out.append(f"k={self.k} xi_{self.k}^{2**(self.k + 1) - 2} spans top degree: {self.top_generator_ok}")
        return out


def conjecture_report(k: int, qr=None) -> ConjectureReport:
    """Test the two observed patterns in the quotient by zeta_(k+1..2k)."""
    qr = qr or build_quotient(k, k)
    table = qr.table
    found, predicted = {}, {}
    for j in range(1, k):
        predicted[j] = 2 ** (2 * k - j + 1)
        e = 1
        while True:
            if not qr.normal_form(Poly.var(table, f"xi{j}", e)):
                break
            e += 1
        found[j] = e
    top = qr.normal_form(Poly.var(table, f"xi{k}", 2 ** (k + 1) - 2))
    ok = bool(top) and top.degree == qr.top_degree
    return ConjectureReport(k, found, predicted, ok)
