"""Exact linear algebra over GF(2) with rows packed into Python ints.

Bit i of a row is the coefficient of basis vector i.  Pivoting is
deterministic: each row is keyed by its highest set bit.
"""

from __future__ import annotations


class Echelon:
    """An incrementally built, fully reduced row-echelon basis of a subspace."""

    __slots__ = ("rows",)

    def __init__(self, vectors=()):
        self.rows = {}  # pivot bit -> row
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def copy(self):
        e = Echelon()
        e.rows = dict(self.rows)
        return e

    def reduce(self, v):
        rows = self.rows
        w = v
        while w:
            t = w.bit_length() - 1
            w ^= 1 << t
            row = rows.get(t)
            if row is not None:
                # fully reduced rows carry no other pivot bits
                v ^= row
        return v

    def contains(self, v):
        return self.reduce(v) == 0

    def add(self, v):
        """Insert v; returns True if it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        top = v.bit_length() - 1
        for p, row in list(self.rows.items()):
            if row >> top & 1:
                self.rows[p] = row ^ v
        self.rows[top] = v
        return True

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]


def rank(vectors):
    return Echelon(vectors).rank


def kernel(images):
    """Combinations of ``images`` (list of ints) that vanish.

    Returns a basis of the kernel as bit masks over the input indices.
    """
    ech = Echelon()
    out = []
    for i, img in enumerate(images):
        row = (img << len(images)) | (1 << i)
        r = ech.reduce(row)
        if r >> len(images) == 0:
            out.append(r)
        else:
            ech.add(r)
    return out


def combine(vectors, mask):
    acc = 0
    i = 0
    while mask:
        if mask & 1:
            acc ^= vectors[i]
        mask >>= 1
        i += 1
    return acc


def matrix_rank(rows_of_bits):
    """Rank of a 0/1 matrix given as a list of lists."""
    vecs = []
    for row in rows_of_bits:
        v = 0
        for j, b in enumerate(row):
            if b & 1:
                v |= 1 << j
        vecs.append(v)
    return rank(vecs)
