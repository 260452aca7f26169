"""Exact dense linear algebra over Q and Q(zeta_N) scalars.

Vectors are plain lists of scalars (int / Fraction / CycNumber mixed).
Everything is exact; there is no pivoting heuristics beyond "first
nonzero", which keeps results deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclotomic import Scalar, inv

Vector = list


def _reduce_against(v: Vector, rows: list[Vector], pivots: list[int]) -> Vector:
    v = list(v)
    for row, p in zip(rows, pivots):
        c = v[p]
        if c:
            for j in range(p, len(v)):
                if row[j]:
                    v[j] = v[j] - c * row[j]
    return v


class RowSpace:
    """Incrementally built row space in reduced echelon form."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[Vector] = []
        self.pivots: list[int] = []

    def insert(self, v: Sequence[Scalar]) -> bool:
        """Add a vector; returns True if it enlarged the space."""
        v = _reduce_against(list(v), self.rows, self.pivots)
        p = next((j for j, c in enumerate(v) if c), None)
        if p is None:
            return False
        c = inv(v[p])
        v = [c * x if x else x for x in v]
        v[p] = Fraction(1)
        # keep previous rows reduced against the new one
        for row in self.rows:
            f = row[p]
            if f:
                for j in range(p, self.ncols):
                    if v[j]:
                        row[j] = row[j] - f * v[j]
        idx = next((i for i, q in enumerate(self.pivots) if q > p),
                   len(self.pivots))
        self.rows.insert(idx, v)
        self.pivots.insert(idx, p)
        return True

    def contains(self, v: Sequence[Scalar]) -> bool:
        return not any(_reduce_against(list(v), self.rows, self.pivots))

    def dim(self) -> int:
        return len(self.rows)

    def equals(self, other: "RowSpace") -> bool:
        if self.dim() != other.dim():
            return False
        return all(other.contains(r) for r in self.rows)


def rank(rows: Sequence[Sequence[Scalar]], ncols: int) -> int:
    space = RowSpace(ncols)
    for r in rows:
        space.insert(r)
    return space.dim()


def kernel_basis(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[Vector]:
    """Basis of the solution space {x : row . x = 0 for all rows}.

    Kernel vectors are indexed by free columns in column order, each with a
    1 in its free position, giving a deterministic reduced basis.
    """
    space = RowSpace(ncols)
    for r in rows:
        space.insert(r)
    pivset = set(space.pivots)
    free = [j for j in range(ncols) if j not in pivset]
    out = []
    for f in free:
        v: Vector = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(space.rows, space.pivots):
            if row[f]:
                v[p] = -row[f]
        out.append(v)
    return out


def solve_in_span(basis: Sequence[Sequence[Scalar]], v: Sequence[Scalar]
                  ) -> list[Scalar] | None:
    """Coefficients expressing v as a combination of basis vectors, or None."""
    if not basis:
        return [] if not any(v) else None
    n = len(basis[0])
    m = len(basis)
    # augmented rows of the transposed system
    aug = [[basis[i][j] for i in range(m)] + [v[j]] for j in range(n)]
    space = RowSpace(m + 1)
    for r in aug:
        space.insert(r)
    coeffs: list[Scalar] = [Fraction(0)] * m
    for row, p in zip(space.rows, space.pivots):
        if p == m:
            return None  # inconsistent
        # row: x_p + sum_{j>p} row[j] x_j = row[m]; free vars set to 0
        coeffs[p] = row[m]
    for row, p in zip(space.rows, space.pivots):
        extra = sum((row[j] * coeffs[j] for j in range(p + 1, m)
                     if row[j] and coeffs[j]), Fraction(0))
        coeffs[p] = row[m] - extra
    return coeffs
