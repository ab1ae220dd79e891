"""Conjugate classes, the Dyer-Lashof operation Q1, and leading terms.

Conventions: xi_0 = zeta_0 = 1.  In characteristic 2 the conjugation
relation sum_{i+j=n} xi_i^(2^j) zeta_j = 0 solves to

    zeta_n = sum_{i=1}^{n} xi_i^(2^(n-i)) zeta_(n-i),

and in A<k>_* only the terms with i <= k survive.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .polycore import Poly, VariableTable, adams_leading_part, xi_table


@dataclass(frozen=True)
class Full:
    """F2[xi_1, ..., xi_N] with all generators up to N honest."""

    N: int

    def table(self):
        return _xi_table(self.N)

    @property
    def top(self):
        return self.N


@dataclass(frozen=True)
class Trunc:
    """A<k>_* = F2[xi_1, ..., xi_k] with xi_j = 0 for j > k."""

    k: int

    def table(self):
        return _xi_table(self.k)

    @property
    def top(self):
        return self.k


@lru_cache(maxsize=None)
def _xi_table(n) -> VariableTable:
    return xi_table(n)


class TruncationError(ValueError):
    pass


_zeta_lock = threading.Lock()
_zeta_memo: dict = {}


def xi(i, spec) -> Poly:
    table = spec.table()
    if i == 0:
        return Poly.one(table)
    if i > spec.top:
        if isinstance(spec, Trunc):
            return Poly.zero(table)
        raise TruncationError(f"xi_{i} is not available in {spec}")
    return Poly.var(table, f"xi{i}")


def zeta(n: int, spec) -> Poly:
    """The conjugate zeta_n over the given truncation, by memoized recursion."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Poly.one(spec.table())
    if isinstance(spec, Full) and n > spec.N:
        raise TruncationError(f"zeta_{n} needs Full(N) with N >= {n}")
    key = (n, spec)
    hit = _zeta_memo.get(key)
    if hit is not None:
        return hit
    acc = Poly.zero(spec.table())
    for i in range(1, min(n, spec.top) + 1):
        acc = acc + xi(i, spec).frobenius(n - i) * zeta(n - i, spec)
    with _zeta_lock:
        _zeta_memo.setdefault(key, acc)
    return acc


def verify_milnor_identity(n: int, N: int | None = None) -> bool:
    """Check the conjugation relation in degree 2^n - 1 two independent ways.

    First the relation sum xi_i^(2^j) zeta_j = 0 itself.  Then the other
    composite f(g(x)) = sum_i xi_i (sum_j zeta_j x^(2^j))^(2^i), expanded as a
    power series truncated past x^(2^n), must equal x.
    """
    N = n if N is None else N
    if N < n:
        raise ValueError("need N >= n")
    spec = Full(N)
    table = spec.table()
    relation = Poly.zero(table)
    for i in range(n + 1):
        relation = relation + xi(i, spec).frobenius(n - i) * zeta(n - i, spec)
    if relation:
        return False

    # power series in x: coefficient of x^(2^e) for e = 0..n
    g = {j: zeta(j, spec) for j in range(n + 1)}
    composite = {e: Poly.zero(table) for e in range(n + 1)}
    for i in range(n + 1):
        # (sum_j zeta_j x^(2^j))^(2^i) = sum_j zeta_j^(2^i) x^(2^(i+j))
        for j in range(n + 1 - i):
            composite[i + j] = composite[i + j] + xi(i, spec) * g[j].frobenius(i)
    if composite[0] != Poly.one(table):
        return False
    return all(not composite[e] for e in range(1, n + 1))


def _xi_index(name):
    if not (name.startswith("xi") and name[2:].isdigit()):
        raise ValueError(f"q1 is only defined on xi-variables, got {name}")
    return int(name[2:])


def q1_generator(j: int, table) -> Poly:
    """Q1(xi_j) = xi_(j+1) + xi_1 xi_j^2."""
    name = f"xi{j + 1}"
    if name not in table:
        raise TruncationError(f"Q1(xi_{j}) needs xi_{j + 1} in the table")
    return Poly.var(table, name) + Poly.var(table, "xi1") * Poly.var(table, f"xi{j}", 2)


def q1(p: Poly) -> Poly:
    """The Dyer-Lashof operation Q1 on a homogeneous polynomial in the xi's.

    Additive on terms of equal degree; on a monomial the Cartan formula
    Q1(xy) = Q1(x) y^2 + x^2 Q1(y) is applied factor by factor.
    """
    table = p.table
    if not p:
        return p
    if not p.is_homogeneous():
        raise ValueError("q1 requires homogeneous input")
    names = table.names
    for name in names:
        _xi_index(name)
    result = Poly.zero(table)
    for mono in p.terms:
        result = result + _q1_monomial(table, mono)
    return result


def _q1_monomial(table, mono):
    # Q1(x y) = Q1(x) y^2 + x^2 Q1(y); Q1(1) = 0.
    factors = []
    for name, e in zip(table.names, mono):
        factors.extend([name] * e)
    if not factors:
        return Poly.zero(table)
    q = None  # Q1 of the running product
    prod = Poly.one(table)
    for name in factors:
        x = Poly.var(table, name)
        qx = q1_generator(_xi_index(name), table)
        if q is None:
            q = qx
        else:
            q = q * x.square() + prod.square() * qx
        prod = prod * x
    return q


def zeta_leading_term(n: int, k: int):
    """Closed form xi_r xi_k^(2^r + 2^(r+k) + ... + 2^(n-k)) for n = kq + r, 1 <= r <= k.

    Returns the exponent tuple over F2[xi_1..xi_k].
    """
    if n <= k:
        raise ValueError("closed form needs n > k")
    q, r = divmod(n, k)
    if r == 0:
        q, r = q - 1, k
    exps = [0] * k
    exps[r - 1] += 1
    exps[k - 1] += sum(2 ** (r + j * k) for j in range(q))
    return tuple(exps)


def leading_term_of_truncated_zeta(n: int, k: int) -> Poly:
    return adams_leading_part(zeta(n, Trunc(k)))
