"""Exact linear algebra over the rationals on sparse rows.

Rows are ``dict[int, Fraction]`` (column -> nonzero entry) or dense
sequences, which are converted on entry.  Elimination keeps the pivot rows
in reduced row echelon form at all times, so nullspace extraction is direct.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

SparseRow = dict[int, Fraction]


def to_sparse(row: Sequence | Mapping) -> SparseRow:
    if isinstance(row, Mapping):
        items = row.items()
    else:
        items = enumerate(row)
    return {j: Fraction(v) for j, v in items if v}


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self):
        self.pivots: dict[int, SparseRow] = {}

    def reduce(self, row: SparseRow) -> SparseRow:
        r = dict(row)
        for p in [c for c in r if c in self.pivots]:
            f = r.get(p)
            if not f:
                continue
            for c, v in self.pivots[p].items():
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        return r

    def add(self, row: Sequence | Mapping) -> bool:
        """Insert a row; return True if it increased the rank."""
        r = self.reduce(to_sparse(row))
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {c: v * inv for c, v in r.items()}
        for q, prow in self.pivots.items():
            f = prow.get(p)
            if f:
                for c, v in r.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        self.pivots[p] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, row: Sequence | Mapping) -> bool:
        return not self.reduce(to_sparse(row))


def rank(rows: Iterable[Sequence | Mapping]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows: Iterable[Sequence | Mapping], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : A v = 0}``, one vector per free column (ascending)."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    basis = []
    for f in range(ncols):
        if f in ech.pivots:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, prow in ech.pivots.items():
            c = prow.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def clear_denominators(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale a vector to coprime integers with a positive first nonzero entry."""
    from math import gcd, lcm

    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(v)
    first = next(x for x in ints if x)
    s = g if first > 0 else -g
    return [Fraction(x // s) if x % s == 0 else Fraction(x, s) for x in ints]
