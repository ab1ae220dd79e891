"""Polynomials over F2 in graded-commutative variables.

A :class:`Poly` is a finite set of exponent vectors over a :class:`VariableTable`.
Coefficients live in F2, so addition is symmetric difference of the term sets.
Variables may be polynomial or exterior (squares to zero); degrees may be
negative.  Every value is immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Monomial = tuple  # tuple[int, ...] aligned with a VariableTable

# Exponents are treated as signed 32-bit machine integers.
MAX_EXPONENT = 2**31 - 1


class TableMismatch(ValueError):
    pass


class ExponentOverflow(OverflowError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    degree: int
    exterior: bool = False
    weight: int = 0


@dataclass(frozen=True)
class VariableTable:
    variables: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in self.variables:
            if v.name.startswith("xi") and v.name[2:].isdigit():
                i = int(v.name[2:])
                if v.degree != 2**i - 1:
                    raise ValueError(f"{v.name} must have degree {2**i - 1}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.variables)

    def __iter__(self):
        return iter(self.variables)

    @property
    def names(self):
        return tuple(v.name for v in self.variables)

    @property
    def has_exterior(self):
        return any(v.exterior for v in self.variables)

    def index(self, name):
        return self._index[name]

    def __contains__(self, name):
        return name in self._index

    def degree(self, mono):
        return sum(e * v.degree for e, v in zip(mono, self.variables))

    def weight(self, mono):
        return sum(e * v.weight for e, v in zip(mono, self.variables))

    def one(self):
        return (0,) * len(self.variables)

    def unit(self, name, power=1):
        m = [0] * len(self.variables)
        m[self._index[name]] = power
        return tuple(m)

    def order_key(self, mono):
        """Sort key for the graded reverse-lexicographic term order."""
        return (self.degree(mono), tuple(-e for e in reversed(mono)))

    def format_monomial(self, mono):
        parts = []
        for e, v in zip(mono, self.variables):
            if e == 1:
                parts.append(v.name)
            elif e:
                parts.append(f"{v.name}^{e}")
        return "*".join(parts) if parts else "1"

    def to_json(self):
        return [[v.name, v.degree, "exterior" if v.exterior else "polynomial", v.weight]
                for v in self.variables]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Variable(n, int(d), p == "exterior", int(w)) for n, d, p, w in data))


def xi_variable(i):
    return Variable(f"xi{i}", 2**i - 1, False, 1)


def xi_table(n, extra=()):
    """F2[xi_1, ..., xi_n], optionally followed by extra variables."""
    return VariableTable(tuple(xi_variable(i) for i in range(1, n + 1)) + tuple(extra))


def _check_exponent(e):
    if e > MAX_EXPONENT:
        raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
    return e


def mono_mul(table, a, b):
    """Product of two monomials, or None when an exterior square appears."""
    m = tuple(x + y for x, y in zip(a, b))
    if table.has_exterior:
        for e, v in zip(m, table.variables):
            if v.exterior and e > 1:
                return None
    if any(e > MAX_EXPONENT for e in m):
        _check_exponent(max(m))
    return m


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Poly:
    """An element of F2[polynomial vars] (x) E(exterior vars)."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table, terms=()):
        self.table = table
        self.terms = terms if isinstance(terms, frozenset) else frozenset(terms)
        self._hash = None

    # construction
    @classmethod
    def zero(cls, table):
        return cls(table, frozenset())

    @classmethod
    def one(cls, table):
        return cls(table, frozenset([table.one()]))

    @classmethod
    def var(cls, table, name, power=1):
        if power == 0:
            return cls.one(table)
        if table.variables[table.index(name)].exterior and power > 1:
            return cls.zero(table)
        return cls(table, frozenset([table.unit(name, power)]))

    @classmethod
    def monomial(cls, table, mono):
        return cls(table, frozenset([tuple(mono)]))

    @classmethod
    def from_dict(cls, table, powers):
        """Monomial from a {name: exponent} mapping."""
        m = [0] * len(table)
        for name, e in powers.items():
            m[table.index(name)] = e
        if any(v.exterior and e > 1 for v, e in zip(table.variables, m)):
            return cls.zero(table)
        return cls(table, frozenset([tuple(m)]))

    # basic protocol
    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Poly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.table, self.terms))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(self.table.format_monomial(m) for m in self.sorted_terms())

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.table != self.table:
            raise TableMismatch("polynomials live over different variable tables")

    # arithmetic
    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return Poly(self.table, self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        self._check(other)
        return Poly(self.table, _mul_terms(self.table, self.terms, other.terms))

    def mul_monomial(self, mono):
        table = self.table
        out = set()
        for t in self.terms:
            m = mono_mul(table, t, mono)
            if m is not None:
                out.add(m)
        return Poly(table, frozenset(out))

    def square(self):
        """Frobenius: squares of cross terms cancel in characteristic 2."""
        table = self.table
        out = []
        ext = [v.exterior for v in table.variables]
        for t in self.terms:
            if table.has_exterior and any(x and e for x, e in zip(ext, t)):
                continue
            out.append(tuple(_check_exponent(2 * e) for e in t))
        return Poly(table, frozenset(out))

    def frobenius(self, j):
        """p^(2^j) by doubling every exponent j times."""
        p = self
        for _ in range(j):
            p = p.square()
        return p

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.one(self.table)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    # gradings
    def degrees(self):
        return {self.table.degree(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"{self} is not homogeneous and nonzero")
        return degs.pop()

    def weights(self):
        return {self.table.weight(m) for m in self.terms}

    def sorted_terms(self, reverse=True):
        """Terms in canonical order, largest (leading) first by default."""
        return sorted(self.terms, key=self.table.order_key, reverse=reverse)

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.table.order_key)

    def is_monomial(self):
        return len(self.terms) == 1

    def single(self):
        if len(self.terms) != 1:
            raise ValueError(f"{self} is not a single monomial")
        return next(iter(self.terms))

    # change of rings
    def restrict(self, table):
        """Map into ``table`` by name; terms using missing variables are dropped (set to zero)."""
        idx = [table.index(n) if n in table else None for n in self.table.names]
        out = set()
        for t in self.terms:
            if any(e and i is None for e, i in zip(t, idx)):
                continue
            m = [0] * len(table)
            for e, i in zip(t, idx):
                if i is not None:
                    m[i] = e
            out ^= {tuple(m)}
        return Poly(table, frozenset(out))

    def substitute(self, images, table=None):
        """Replace variables by polynomials (over ``table``); unmapped variables keep their name."""
        table = table or self.table
        result = Poly.zero(table)
        cache = {}
        for t in self.terms:
            term = Poly.one(table)
            for name, e in zip(self.table.names, t):
                if not e:
                    continue
                key = (name, e)
                if key not in cache:
                    base = images[name] if name in images else Poly.var(table, name)
                    cache[key] = base ** e
                term = term * cache[key]
                if not term:
                    break
            result = result + term
        return result

    # serialization
    def to_json_obj(self):
        return {"vars": self.table.to_json(), "terms": [list(m) for m in self.sorted_terms()]}

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj):
        table = VariableTable.from_json(obj["vars"])
        terms = [tuple(int(e) for e in t) for t in obj["terms"]]
        for t in terms:
            if len(t) != len(table):
                raise ValueError("exponent vector length does not match variable table")
        if len(set(terms)) != len(terms):
            raise ValueError("repeated term in polynomial JSON")
        return cls(table, frozenset(terms))

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


def _mul_terms(table, a, b):
    out = set()
    ext = table.has_exterior
    variables = table.variables
    for x in a:
        for y in b:
            m = tuple(i + j for i, j in zip(x, y))
            if ext and any(v.exterior and e > 1 for v, e in zip(variables, m)):
                continue
            if m in out:
                out.remove(m)
            else:
                out.add(m)
    for m in out:
        for e in m:
            if e > MAX_EXPONENT:
                _check_exponent(e)
    return frozenset(out)


def poly_add(p, q):
    return p + q


def poly_mul(p, q):
    return p * q


def poly_pow(p, n):
    return p ** n


def poly_sum(polys: Iterable[Poly], table) -> Poly:
    acc = set()
    for p in polys:
        acc ^= p.terms
    return Poly(table, frozenset(acc))


def binom_mod2(j, i):
    """Binomial coefficient j choose i modulo 2 (Lucas: i's bits are a subset of j's)."""
    if i < 0 or j < 0 or i > j:
        return 0
    return 1 if (i & ~j) == 0 else 0


def adams_leading_part(p):
    """Terms of minimal Adams weight."""
    if not p.terms:
        raise ValueError("adams_leading_part of zero")
    w = min(p.table.weight(m) for m in p.terms)
    return Poly(p.table, frozenset(m for m in p.terms if p.table.weight(m) == w))


def parse_poly(table, text: str) -> Poly:
    """Parse ``"xi1^3*xi2 + xi2^2 + 1"`` style input over ``table``."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return Poly.zero(table)
    total = Poly.zero(table)
    for chunk in text.split("+"):
        term = Poly.one(table)
        if chunk != "1":
            for factor in chunk.split("*"):
                name, _, power = factor.partition("^")
                if name not in table:
                    raise ValueError(f"unknown variable {name!r}")
                term = term * Poly.var(table, name, int(power) if power else 1)
        total = total + term
    return total


def monomials_of_degree(table, degree: int, variables: Sequence[int] | None = None):
    """All monomials of the given degree; polynomial variables must have positive degree."""
    idx = list(range(len(table))) if variables is None else list(variables)
    ext = [i for i in idx if table.variables[i].exterior]
    poly = [i for i in idx if not table.variables[i].exterior]
    for i in poly:
        if table.variables[i].degree <= 0:
            raise ValueError("polynomial variables must have positive degree to enumerate")
    n = len(table)
    out = []
    for mask in range(1 << len(ext)):
        base = [0] * n
        d = degree
        for b, i in enumerate(ext):
            if mask >> b & 1:
                base[i] = 1
                d -= table.variables[i].degree
        if d < 0:
            continue
        _fill(table, poly, 0, d, base, out)
    return out


def _fill(table, poly, pos, remaining, current, out):
    if pos == len(poly):
        if remaining == 0:
            out.append(tuple(current))
        return
    i = poly[pos]
    deg = table.variables[i].degree
    for e in range(remaining // deg + 1):
        current[i] = e
        _fill(table, poly, pos + 1, remaining - e * deg, current, out)
    current[i] = 0
