"""Exact row reduction.

Everything funnels through :func:`echelonize`, a Gauss-Jordan routine on
sparse rows (``dict`` column -> nonzero scalar).  The dense
:class:`ExactMatrix` wrapper and :func:`rref` exist for callers that want a
plain matrix; the engine and the resolution code stay sparse.

Pivot rule: the pivot of a row is its leftmost nonzero column, so the
result is the unique reduced row echelon form and bases built from it are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from kszl.errors import DimensionMismatch, NotInvertible


def _axpy(target, coeff, row):
    """target -= coeff * row, in place, dropping zeros."""
    for c, v in row.items():
        nv = target.get(c, 0) - coeff * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


class Echelon:
    """Incrementally maintained reduced row echelon basis of a row space."""

    def __init__(self):
        self.rows = {}  # pivot column -> row (pivot entry 1, no other pivot columns)

    def __len__(self):
        return len(self.rows)

    def reduce(self, row):
        """Return ``row`` reduced against the basis (a new dict)."""
        out = dict(row)
        for c in [c for c in row if c in self.rows]:
            v = out.get(c)
            if v:
                _axpy(out, v, self.rows[c])
        return out

    def add(self, row):
        """Insert a row; return its new pivot column or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        p = min(r)
        lead = r[p]
        if lead != 1:
            inv = 1 / lead
            r = {c: v * inv for c, v in r.items()}
        for other in self.rows.values():
            v = other.get(p)
            if v:
                _axpy(other, v, r)
        self.rows[p] = r
        return p

    def contains(self, row):
        return not self.reduce(row)

    def pivots(self):
        return sorted(self.rows)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]


def echelonize(rows):
    """Reduced row echelon form of sparse rows: (basis rows, pivot columns)."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    piv = ech.pivots()
    return [ech.rows[p] for p in piv], piv


def left_kernel(rows, ncols):
    """Basis of {c : sum_i c_i rows[i] = 0} as sparse vectors over row indices.

    The basis is returned in reduced echelon form, so it is canonical.
    """
    ech = Echelon()
    for i, r in enumerate(rows):
        aug = dict(r)
        aug[ncols + i] = Fraction(1)
        ech.add(aug)
    out = []
    for p in ech.pivots():
        if p >= ncols:
            out.append({c - ncols: v for c, v in ech.rows[p].items()})
    return out


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix of exact scalars."""

    rows: tuple
    ncols: int

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        for r in rows:
            if len(r) != self.ncols:
                raise DimensionMismatch("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(tuple(tuple(r) for r in rows), ncols)

    @classmethod
    def identity(cls, n, one=Fraction(1)):
        zero = one * 0
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(tuple((Fraction(0),) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self):
        return ExactMatrix(tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)), self.nrows)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return ExactMatrix(
            tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols) for r in self.rows),
            other.ncols,
        )

    def __mul__(self, scalar):
        return ExactMatrix(tuple(tuple(scalar * x for x in r) for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def apply(self, vec):
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length does not match matrix")
        return [sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.rows]

    def kron(self, other):
        rows = []
        for r1 in self.rows:
            for r2 in other.rows:
                rows.append(tuple(a * b for a in r1 for b in r2))
        return ExactMatrix(tuple(rows), self.ncols * other.ncols)

    def sparse_rows(self):
        return [{j: v for j, v in enumerate(r) if v} for r in self.rows]

    def inverse(self):
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatch("only square matrices are invertible")
        aug = []
        for i, r in enumerate(self.rows):
            row = {j: v for j, v in enumerate(r) if v}
            row[n + i] = Fraction(1)
            aug.append(row)
        basis, piv = echelonize(aug)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise NotInvertible("matrix is singular")
        zero = Fraction(0)
        return ExactMatrix(tuple(tuple(basis[i].get(n + j, zero) for j in range(n)) for i in range(n)), n)

    def is_identity(self):
        return self.nrows == self.ncols and all(
            (v == 1 if i == j else v == 0) for i, r in enumerate(self.rows) for j, v in enumerate(r)
        )


def _dense(sparse, ncols):
    zero = Fraction(0)
    return tuple(sparse.get(j, zero) for j in range(ncols))


def rref(M):
    """(rank, reduced matrix, pivot columns) of an :class:`ExactMatrix`.

    The reduced matrix keeps the input shape; zero rows come last.
    """
    basis, piv = echelonize(M.sparse_rows())
    rows = [_dense(r, M.ncols) for r in basis]
    rows += [(Fraction(0),) * M.ncols] * (M.nrows - len(rows))
    return len(piv), ExactMatrix(tuple(rows), M.ncols), piv


def rank(M):
    return len(echelonize(M.sparse_rows())[1])


def solve_membership(span, v):
    """Coefficients c with sum_i c_i span.rows[i] == v, or None if v is not in the row span."""
    if len(v) != span.ncols:
        raise DimensionMismatch(f"vector of length {len(v)} against rows of length {span.ncols}")
    n = span.ncols
    ech = Echelon()
    for i, r in enumerate(span.rows):
        row = {j: x for j, x in enumerate(r) if x}
        row[n + i] = Fraction(1)
        ech.add(row)
    target = {j: x for j, x in enumerate(v) if x}
    for p in ech.pivots():
        if p >= n:
            break
        c = target.get(p)
        if c:
            _axpy(target, c, ech.rows[p])
    if any(j < n for j in target):
        return None
    zero = Fraction(0)
    return [-target.get(n + i, zero) for i in range(span.nrows)]


def nullspace(M):
    """Basis of the right null space {v : M v = 0}, as dense lists."""
    zero = Fraction(0)
    ker = left_kernel(M.transpose().sparse_rows(), M.nrows)
    return [[k.get(j, zero) for j in range(M.ncols)] for k in ker]
