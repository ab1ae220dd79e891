"""Graded-commutative algebras over F2 given by generators and relations.

Exterior generators may carry negative degree (the beta classes).  The
degreewise basis comes from a Groebner basis in which exterior squares are
adjoined as relations.  A relation can be flagged as known only modulo
monomials of higher Adams weight; queries that could see the unknown
correction are refused.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import buchberger, normal_form
from .polycore import Poly, mono_divides, monomials_of_degree, parse_poly


class PrecisionError(ValueError):
    pass


@dataclass(frozen=True)
class PresentedAlgebra:
    table: object
    relations: tuple
    imprecise: tuple = ()  # relations known only modulo higher Adams weight
    gb: object = field(default=None, compare=False)
    exact_gb: object = field(default=None, compare=False, repr=False)
    _unsafe: tuple = field(default=(), compare=False, repr=False)

    def normal_form(self, p):
        if self.gb is None:
            return p
        return normal_form(p, self.gb)

    def _leads(self):
        return self.gb.leading if self.gb is not None else ()

    def is_standard(self, mono):
        return not any(mono_divides(lt, mono) for lt in self._leads())

    def check_precision(self, degree):
        for rel_degree in self._unsafe:
            shift = degree - rel_degree
            leads = self.exact_gb.leading if self.exact_gb is not None else ()
            for x in monomials_of_degree(self.table, shift):
                if not any(mono_divides(lt, x) for lt in leads):
                    raise PrecisionError(
                        f"degree {degree} depends on a relation in degree {rel_degree} "
                        "that is only known modulo higher weight")

    def basis(self, degree):
        """Standard monomials of the given topological degree."""
        self.check_precision(degree)
        ms = [m for m in monomials_of_degree(self.table, degree) if self.is_standard(m)]
        return sorted(ms, key=self.table.order_key)

    def dims(self, low, high):
        out = {}
        for d in range(low, high + 1):
            n = len(self.basis(d))
            if n:
                out[d] = n
        return out

    @property
    def min_degree(self):
        return sum(v.degree for v in self.table.variables if v.exterior and v.degree < 0)

    def parse(self, text):
        return self.normal_form(parse_poly(self.table, text))


def presented_algebra(table, relations, imprecise=(), degree_cap=None):
    """Build the presented algebra F2[...] (x) E(...) / (relations).

    ``imprecise`` lists indices of relations that are stated only modulo
    monomials of higher Adams weight than their displayed terms.
    """
    relations = tuple(r if isinstance(r, Poly) else parse_poly(table, r) for r in relations)
    for r in relations:
        if r and not r.is_homogeneous():
            raise ValueError(f"relation {r} is not homogeneous")
    nonzero = [r for r in relations if r]
    gb = buchberger(nonzero, max_degree=degree_cap, allow_exterior=True) if nonzero else None
    exact = [r for i, r in enumerate(relations) if i not in imprecise and r]
    exact_gb = buchberger(exact, max_degree=degree_cap, allow_exterior=True) if exact else None
    unsafe = []
    for i in imprecise:
        r = relations[i]
        top_weight = max(r.weights())
        leads = exact_gb.leading if exact_gb is not None else ()
        corrections = [m for m in monomials_of_degree(table, r.degree)
                       if table.weight(m) > top_weight
                       and not any(mono_divides(lt, m) for lt in leads)]
        if corrections:
            unsafe.append(r.degree)
    return PresentedAlgebra(table, relations, tuple(imprecise), gb, exact_gb, tuple(unsafe))
