"""Buchberger's algorithm over F2 in a graded polynomial ring.

The term order compares topological degree first and breaks ties with
reverse lexicographic order on exponent vectors.  Pairs are processed by
the normal strategy (ascending lcm), so the output is deterministic.

Exterior variables are supported only on request (``allow_exterior``):
x^2 = 0 is then built into multiplication, and the extra S-pairs against
the adjoined squares are the products y*g for exterior y dividing LT(g).
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass

from .polycore import (
    Poly,
    TableMismatch,
    mono_div,
    mono_divides,
    mono_lcm,
    monomials_of_degree,
    poly_sum,
)


class GroebnerError(ValueError):
    pass


class ResourceExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TermOrder:
    """Graded reverse-lexicographic order on a fixed table."""

    table: object

    def key(self, mono):
        return self.table.order_key(mono)

    def leading(self, p):
        return max(p.terms, key=self.key)


@dataclass(frozen=True)
class GroebnerBasis:
    table: object
    polys: tuple
    generators: tuple
    exterior: bool = False

    @property
    def order(self):
        return TermOrder(self.table)

    @property
    def leading(self):
        return tuple(p.leading_monomial() for p in self.polys)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def to_json_obj(self):
        return {
            "vars": self.table.to_json(),
            "basis": [[list(m) for m in p.sorted_terms()] for p in self.polys],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


@dataclass(frozen=True)
class CofactorCertificate:
    target: Poly
    generators: tuple
    cofactors: tuple

    def __post_init__(self):
        if not self.verify():
            raise GroebnerError("cofactor certificate does not reproduce its target")

    def verify(self):
        total = poly_sum((c * g for c, g in zip(self.cofactors, self.generators)), self.target.table)
        return total == self.target

    def to_json_obj(self):
        return {
            "vars": self.target.table.to_json(),
            "target": [list(m) for m in self.target.sorted_terms()],
            "cofactors": [[list(m) for m in c.sorted_terms()] for c in self.cofactors],
        }


def _heap_key(table, mono):
    # max-heap on (degree, revlex) via negation
    return (-table.degree(mono), tuple(reversed(mono)))


def _reduce(table, p_terms, polys, leads, reps=None, ngens=0, full=True):
    """Divide by ``polys``; returns (remainder terms, quotient reps or None)."""
    terms = set(p_terms)
    heap = [(_heap_key(table, m), m) for m in terms]
    heapq.heapify(heap)
    remainder = set()
    quotients = [set() for _ in polys] if reps is not None else None
    last = None
    while heap:
        _, m = heapq.heappop(heap)
        if m == last or m not in terms:
            continue
        last = m
        for idx, lt in enumerate(leads):
            if mono_divides(lt, m):
                shift = mono_div(m, lt)
                prod = polys[idx].mul_monomial(shift)
                if m not in prod.terms:
                    # exterior annihilation destroyed the leading term
                    continue
                for t in prod.terms:
                    if t in terms:
                        terms.remove(t)
                    else:
                        terms.add(t)
                        heapq.heappush(heap, (_heap_key(table, t), t))
                if quotients is not None:
                    quotients[idx] ^= {shift}
                last = None
                break
        else:
            terms.remove(m)
            remainder.add(m)
            if not full:
                remainder |= terms
                break
    return remainder, quotients


def _combine_reps(table, quotients, reps, ngens):
    """sum_j q_j * rep_j as a list of cofactors over the original generators."""
    out = [set() for _ in range(ngens)]
    for q, rep in zip(quotients, reps):
        if not q:
            continue
        qp = Poly(table, frozenset(q))
        for i in range(ngens):
            if rep[i]:
                out[i] ^= (qp * rep[i]).terms
    return out


def buchberger(gens, order=None, max_degree=None, allow_exterior=False, track=False,
               max_pairs=None):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``max_degree`` caps the degree of any S-pair lcm; exceeding it raises
    :class:`ResourceExceeded` rather than returning a partial basis.
    With ``track=True`` the result also carries, for each basis element, its
    expression in the original generators (attribute ``reps``).
    """
    gens = [g for g in gens]
    if not gens:
        raise GroebnerError("empty generator list")
    table = gens[0].table
    for g in gens:
        if g.table != table:
            raise TableMismatch("generators live over different tables")
    if table.has_exterior and not allow_exterior:
        raise GroebnerError("exterior variables present; use a presented algebra")
    if order is not None and order.table != table:
        raise TableMismatch("term order belongs to another table")
    ngens = len(gens)
    one = Poly.one(table)
    zero = Poly.zero(table)

    polys, leads, reps = [], [], []
    exterior_idx = [i for i, v in enumerate(table.variables) if v.exterior]

    pairs = []
    counter = 0
    stats = {"pairs": 0}

    def push_pair(entry_key, item):
        nonlocal counter
        counter += 1
        heapq.heappush(pairs, (entry_key, counter, item))

    def add(poly, rep):
        idx = len(polys)
        lt = poly.leading_monomial()
        polys.append(poly)
        leads.append(lt)
        reps.append(rep)
        for j in range(idx):
            lcm = mono_lcm(leads[j], lt)
            push_pair(table.order_key(lcm), ("pair", j, idx))
        for v in exterior_idx:
            if lt[v]:
                m = list(lt)
                m[v] += 1
                push_pair(table.order_key(tuple(m)), ("ext", idx, v))

    done = set()
    # insert generators in ascending order of leading term
    order_idx = sorted((i for i in range(ngens) if gens[i]),
                       key=lambda i: table.order_key(gens[i].leading_monomial()))
    for i in order_idx:
        rem, q = _reduce(table, gens[i].terms, polys, leads, reps if track else None)
        if not rem:
            continue
        p = Poly(table, frozenset(rem))
        rep = None
        if track:
            comb = _combine_reps(table, q, reps, ngens)
            rep = [Poly(table, frozenset(c)) + (one if j == i else zero) for j, c in enumerate(comb)]
        add(p, rep)

    while pairs:
        key, _, item = heapq.heappop(pairs)
        if max_degree is not None and key[0] > max_degree:
            # if the leading terms already leave a finite quotient below this
            # degree, every remaining S-polynomial reduces to zero
            top = _finite_top(table, leads)
            if top is not None and key[0] > top:
                break
            raise ResourceExceeded(f"S-pair degree {key[0]} exceeds cap {max_degree}")
        stats["pairs"] += 1
        if max_pairs is not None and stats["pairs"] > max_pairs:
            raise ResourceExceeded(f"more than {max_pairs} S-pairs")
        if item[0] == "pair":
            _, i, j = item
            li, lj = leads[i], leads[j]
            lcm = mono_lcm(li, lj)
            if all(a == 0 or b == 0 for a, b in zip(li, lj)) and not exterior_idx:
                done.add((i, j))
                continue
            if _chain_skip(i, j, lcm, leads, done):
                done.add((i, j))
                continue
            si, sj = mono_div(lcm, li), mono_div(lcm, lj)
            s_terms = polys[i].mul_monomial(si).terms ^ polys[j].mul_monomial(sj).terms
            base = None
            if track:
                base = [reps[i][t].mul_monomial(si) + reps[j][t].mul_monomial(sj)
                        for t in range(ngens)]
            done.add((i, j))
        else:
            _, i, v = item
            y = [0] * len(table)
            y[v] = 1
            y = tuple(y)
            s_terms = polys[i].mul_monomial(y).terms
            base = [reps[i][t].mul_monomial(y) for t in range(ngens)] if track else None
        if not s_terms:
            continue
        rem, q = _reduce(table, s_terms, polys, leads, reps if track else None)
        if not rem:
            continue
        p = Poly(table, frozenset(rem))
        rep = None
        if track:
            comb = _combine_reps(table, q, reps, ngens)
            rep = [Poly(table, frozenset(c)) + b for c, b in zip(comb, base)]
        add(p, rep)

    return _interreduce(table, polys, leads, reps if track else None, gens, bool(exterior_idx))


def _chain_skip(i, j, lcm, leads, done):
    for k in range(len(leads)):
        if k == i or k == j:
            continue
        if mono_divides(leads[k], lcm):
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                return True
    return False


def _interreduce(table, polys, leads, reps, gens, exterior):
    ngens = len(gens)
    # drop elements whose leading term is divisible by another's
    keep = []
    for i, lt in enumerate(leads):
        redundant = False
        for j, lu in enumerate(leads):
            if i == j:
                continue
            if mono_divides(lu, lt) and (lu != lt or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    keep.sort(key=lambda i: table.order_key(leads[i]))
    kp = [polys[i] for i in keep]
    kl = [leads[i] for i in keep]
    kr = [reps[i] for i in keep] if reps is not None else None
    out_p, out_r = [], []
    for pos, i in enumerate(keep):
        others_p = kp[:pos] + kp[pos + 1:]
        others_l = kl[:pos] + kl[pos + 1:]
        others_r = (kr[:pos] + kr[pos + 1:]) if kr is not None else None
        rem, q = _reduce(table, kp[pos].terms, others_p, others_l, others_r)
        p = Poly(table, frozenset(rem))
        if p.leading_monomial() != kl[pos]:
            raise GroebnerError("interreduction changed a leading term")
        out_p.append(p)
        if kr is not None:
            comb = _combine_reps(table, q, others_r, ngens)
            out_r.append([Poly(table, frozenset(c)) + b for c, b in zip(comb, kr[pos])])
    gb = GroebnerBasis(table, tuple(out_p), tuple(gens), exterior)
    if reps is not None:
        object.__setattr__(gb, "reps", tuple(tuple(r) for r in out_r))
    return gb


def normal_form(p, gb):
    if p.table != gb.table:
        raise TableMismatch("polynomial and basis live over different tables")
    rem, _ = _reduce(gb.table, p.terms, list(gb.polys), list(gb.leading))
    return Poly(gb.table, frozenset(rem))


def in_ideal(p, gb):
    return not normal_form(p, gb)


def standard_monomials(gb, degree_bound, min_degree=0):
    """Monomials of degree <= bound not divisible by a leading term, grouped by degree."""
    table = gb.table
    leads = gb.leading
    low = min(min_degree, sum(v.degree for v in table.variables if v.exterior and v.degree < 0))
    out = {}
    for d in range(low, degree_bound + 1):
        ms = [m for m in monomials_of_degree(table, d)
              if not any(mono_divides(lt, m) for lt in leads)]
        if ms:
            out[d] = sorted(ms, key=table.order_key)
    return out


def _finite_top(table, leads):
    """Top degree of the standard monomials, or None if there are infinitely many."""
    bound = 0
    for i, v in enumerate(table.variables):
        if v.exterior:
            bound += max(v.degree, 0)
            continue
        pure = [lt[i] for lt in leads
                if lt[i] > 0 and all(e == 0 for j, e in enumerate(lt) if j != i)]
        if not pure:
            return None
        bound += (min(pure) - 1) * v.degree
    low = sum(v.degree for v in table.variables if v.exterior and v.degree < 0)
    for d in range(bound, low - 1, -1):
        if any(not any(mono_divides(lt, m) for lt in leads) for m in monomials_of_degree(table, d)):
            return d
    return low - 1


def is_finite_dimensional(gb):
    """(finite?, top degree) from pure powers among the leading terms."""
    top = _finite_top(gb.table, gb.leading)
    if top is None:
        return False, None
    return True, top


def reduce_with_cofactors(p, gens, max_degree=None):
    """Either a verified certificate p = sum c_i g_i, or the nonzero normal form."""
    gb = buchberger(gens, max_degree=max_degree, track=True)
    table = gb.table
    rem, q = _reduce(table, p.terms, list(gb.polys), list(gb.leading), list(gb.reps))
    if rem:
        return Poly(table, frozenset(rem))
    comb = _combine_reps(table, q, gb.reps, len(gens))
    cof = tuple(Poly(table, frozenset(c)) for c in comb)
    return CofactorCertificate(p, tuple(gens), cof)


def monomial_ideal_dims(table, generators, max_degree):
    """Degreewise dimensions of F2[vars]/(monomials)."""
    leads = [g.single() if isinstance(g, Poly) else tuple(g) for g in generators]
    dims = {}
    for d in range(0, max_degree + 1):
        n = sum(1 for m in monomials_of_degree(table, d)
                if not any(mono_divides(lt, m) for lt in leads))
        if n:
            dims[d] = n
    return dims
