"""Comodules over F2[u] (|u| = 2) and Ext computed from the cobar complex."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import gf2
from .polycore import binom_mod2


@dataclass(frozen=True)
class Coalgebra:
    """F2[u] with u primitive, or its quotient F2[u]/(u^cap) when cap is set."""

    cap: int | None = None

    @classmethod
    def truncated(cls, k):
        return cls(2**k)

    def has(self, n):
        return n >= 0 and (self.cap is None or n < self.cap)

    def coproduct(self, n):
        """Pairs (i, n - i) with binom(n, i) odd."""
        if not self.has(n):
            raise ValueError(f"u^{n} is not in {self}")
        return [(i, n - i) for i in range(n + 1) if binom_mod2(n, i)]

    def check(self, max_power=16):
        """Coassociativity and counit on u^0..u^max_power (within the cap)."""
        for n in range(max_power + 1):
            if not self.has(n):
                break
            pairs = self.coproduct(n)
            if (0, n) not in pairs or (n, 0) not in pairs:
                return False
            left, right = {}, {}
            for i, j in pairs:
                for a, b in self.coproduct(i):
                    left[(a, b, j)] = left.get((a, b, j), 0) ^ 1
                for a, b in self.coproduct(j):
                    right[(i, a, b)] = right.get((i, a, b), 0) ^ 1
            if {k for k, v in left.items() if v} != {k for k, v in right.items() if v}:
                return False
        return True


@dataclass(frozen=True)
class Comodule:
    """Basis degrees plus coaction: coaction[j] lists (power of u, target index)."""

    degrees: tuple
    coaction: tuple
    labels: tuple = ()

    def __len__(self):
        return len(self.degrees)

    def psi(self, j):
        return self.coaction[j]

    def check(self, coalgebra=Coalgebra()):
        """Counit, degree compatibility and coassociativity on every basis element."""
        for j, terms in enumerate(self.coaction):
            if (0, j) not in terms or sum(1 for p, i in terms if p == 0) != 1:
                return False
            for p, i in terms:
                if not coalgebra.has(p) or self.degrees[i] + 2 * p != self.degrees[j]:
                    return False
            # (Delta x 1) psi = (1 x psi) psi, as sets of (a, b, target) with odd count
            left, right = {}, {}
            for p, i in terms:
                for a, b in coalgebra.coproduct(p):
                    left[(a, b, i)] = left.get((a, b, i), 0) ^ 1
                for q, l in self.coaction[i]:
                    right[(p, q, l)] = right.get((p, q, l), 0) ^ 1
            if {k for k, v in left.items() if v} != {k for k, v in right.items() if v}:
                return False
        return True


def trivial_comodule():
    return Comodule((0,), (((0, 0),),), ("b0",))


def dyadic_set(I):
    """All sums of distinct powers 2^i with i in I."""
    I = sorted(set(I))
    out = set()
    for r in range(len(I) + 1):
        for S in combinations(I, r):
            out.add(sum(2**i for i in S))
    return sorted(out)


def comodule_MI(I) -> Comodule:
    """Basis b_j for j in D_I; psi(b_j) = sum binom(j, i) u^((j - i)/2) (x) b_i."""
    if any(i < 1 for i in I):
        raise ValueError("I must consist of positive integers")
    D = dyadic_set(I)
    pos = {j: n for n, j in enumerate(D)}
    coaction = []
    for j in D:
        terms = tuple(((j - i) // 2, pos[i]) for i in reversed(D) if i <= j and binom_mod2(j, i))
        coaction.append(terms)
    comod = Comodule(tuple(D), tuple(coaction), tuple(f"b{j}" for j in D))
    if not comod.check():
        raise AssertionError("comodule_MI produced an invalid comodule")
    return comod


def nogo_check(I, cofinite=False):
    """Indices i in I with i + 1 not in I.

    With ``cofinite=True``, I is read as the complement of the given finite set
    of positive integers.
    """
    if cofinite:
        missing = set(I)
        return sorted(i for i in range(1, max(missing, default=0) + 1)
                      if i not in missing and i + 1 in missing)
    I = set(I)
    return sorted(i for i in I if i + 1 not in I)


# ---------------------------------------------------------------- cobar complex

@lru_cache(maxsize=None)
def _compositions(total, parts, cap):
    """Ordered tuples of ``parts`` integers >= 1 (and < cap) summing to total."""
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    hi = total - (parts - 1)
    if cap is not None:
        hi = min(hi, cap - 1)
    for a in range(1, hi + 1):
        for rest in _compositions(total - a, parts - 1, cap):
            out.append((a,) + rest)
    return tuple(out)


def _cobar_basis(M, C, s, t):
    cells = []
    for b, deg in enumerate(M.degrees):
        rem = t - deg
        if rem < 0 or rem % 2:
            continue
        for bars in _compositions(rem // 2, s, C.cap):
            cells.append((bars, b))
    return cells


def _cobar_differential(M, C, source, target_index):
    bars, b = source
    out = 0
    for pos, a in enumerate(bars):
        for i, j in C.coproduct(a):
            if i and j:
                out ^= 1 << target_index[bars[:pos] + (i, j) + bars[pos + 1:], b]
    for p, l in M.psi(b):
        if p:
            out ^= 1 << target_index[bars + (p,), l]
    return out


def cobar_ext(M: Comodule, C: Coalgebra, t_bound: int, s_bound=None):
    """dim Ext^{s,t} for t <= t_bound as a dict {(s, t): dim}.

    The reduced cobar complex has basis [u^a1 | ... | u^as] b with all a_i >= 1,
    so in internal degree t only s <= t/2 contributes.
    """
    out = {}
    for t in range(t_bound + 1):
        top = t // 2 if s_bound is None else min(t // 2, s_bound)
        bases = [_cobar_basis(M, C, s, t) for s in range(top + 2)]
        index = [{c: n for n, c in enumerate(cells)} for cells in bases]
        ranks = []
        for s in range(top + 1):
            vecs = [_cobar_differential(M, C, c, index[s + 1]) for c in bases[s]]
            ranks.append(gf2.rank(vecs))
        for s in range(top + 1):
            dim = len(bases[s]) - ranks[s] - (ranks[s - 1] if s else 0)
            if dim:
                out[(s, t)] = dim
    return out


def polynomial_dims(generators, t_bound, s_bound=None):
    """Bigraded dims of F2[x_1, ...] with x_i in bidegree (s_i, t_i); an oracle."""
    dims = {(0, 0): 1}
    for s_i, t_i in generators:
        # multiply by 1 / (1 - x) degree by degree
        new = {}
        for t in range(t_bound + 1):
            for (s, tt), n in dims.items():
                if tt == t:
                    new[(s, t)] = new.get((s, t), 0) + n
            if t >= t_i:
                for (s, tt), n in list(new.items()):
                    if tt == t - t_i:
                        key = (s + s_i, t)
                        new[key] = new.get(key, 0) + n
        dims = new
    if s_bound is not None:
        dims = {k: v for k, v in dims.items() if k[0] <= s_bound}
    return {k: v for k, v in dims.items() if v}
