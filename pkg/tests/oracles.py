"""Independent reference implementations used only by the tests.

None of these import the package's arithmetic: polynomials are dicts from
exponent tuples to 0/1, and linear algebra is naive elimination on lists.
"""

from collections import Counter
from itertools import product


def mul(a, b, exterior=()):
    """Product of two term sets; variables at ``exterior`` positions square to zero."""
    out = Counter()
    for x in a:
        for y in b:
            m = tuple(i + j for i, j in zip(x, y))
            if any(m[p] > 1 for p in exterior):
                continue
            out[m] += 1
    return {m for m, c in out.items() if c % 2}


def add(a, b):
    return set(a) ^ set(b)


def power(a, n, exterior=()):
    acc = {tuple(0 for _ in next(iter(a)))} if a else set()
    for _ in range(n):
        acc = mul(acc, a, exterior)
    return acc


def compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def zeta_by_compositions(n, k):
    """zeta_n over F2[xi_1..xi_k] as a sum over ordered compositions of n.

    Unrolling zeta_n = sum_i xi_i^(2^(n-i)) zeta_(n-i) gives one term per
    composition (i_1, ..., i_l), the product of xi_(i_j)^(2^(n - i_1 - ... - i_j)).
    """
    counts = Counter()
    for comp in compositions(n):
        if max(comp) > k:
            continue
        exps = [0] * k
        used = 0
        for i in comp:
            used += i
            exps[i - 1] += 2 ** (n - used)
        counts[tuple(exps)] += 1
    return {m for m, c in counts.items() if c % 2}


def monomials(degrees, d):
    """Exponent vectors of total degree d for positive variable degrees."""
    if not degrees:
        return [()] if d == 0 else []
    out = []
    for e in range(d // degrees[0] + 1):
        for rest in monomials(degrees[1:], d - e * degrees[0]):
            out.append((e,) + rest)
    return out


def rank(rows):
    """Rank over F2 of vectors given as sets of column labels."""
    rows = [set(r) for r in rows if r]
    r = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        col = max(pivot)
        r += 1
        rows = [row ^ pivot if col in row else row for row in rows]
        rows = [row for row in rows if row]
    return r


def quotient_dims(degrees, gens, max_degree):
    """dim of F2[x]/(gens) per degree by spanning multiples of the generators."""
    out = {}
    gdeg = [sum(e * w for e, w in zip(next(iter(g)), degrees)) for g in gens]
    for d in range(max_degree + 1):
        mons = monomials(degrees, d)
        rows = []
        for g, gd in zip(gens, gdeg):
            if gd > d:
                continue
            for m in monomials(degrees, d - gd):
                rows.append(mul({m}, g))
        n = len(mons) - rank(rows)
        if n:
            out[d] = n
    return out


def gaussian_binomial(n, k, q=2):
    """Count k-dimensional subspaces of F_q^n by brute force over reduced echelon forms."""
    total = 0
    for pivots in _choose(range(n), k):
        free = 0
        for row, p in enumerate(pivots):
            free += sum(1 for c in range(p + 1, n) if c not in pivots)
        total += q**free
    return total


def _choose(items, k):
    items = list(items)
    if k == 0:
        yield ()
        return
    for i, x in enumerate(items):
        for rest in _choose(items[i + 1:], k - 1):
            yield (x,) + rest


def cobar_polynomial_dims(gen_t, t_bound):
    """Bigraded dims {(s, t)} of a polynomial algebra on classes in s = 1."""
    out = Counter()
    maxes = [t_bound // t for t in gen_t]
    for exps in product(*(range(m + 1) for m in maxes)):
        t = sum(e * g for e, g in zip(exps, gen_t))
        if t <= t_bound:
            out[(sum(exps), t)] += 1
    return dict(out)
