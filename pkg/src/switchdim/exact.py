"""Exact rational dense linear algebra.

Everything in this module works over ``fractions.Fraction`` and is fully
deterministic.  Matrix inertia is computed by symmetric congruence
elimination, so no eigenvalue is ever approximated: the signature of a
centered dissimilarity matrix comes out exact.  The only floating point in
the package lives in :mod:`switchdim.jacobi` (an independent cross-check)
and in :mod:`switchdim.realization` (coordinates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction | int


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Signature:
    """Counts of positive, negative and zero eigenvalues of a symmetric matrix.

    Invariant under congruence M -> P^T M P with P invertible, and under
    multiplication of M by a positive scalar.
    """

    positive: int
    negative: int
    zero: int

    @property
    def order(self) -> int:
        return self.positive + self.negative + self.zero

    @property
    def dimensionality(self) -> int:
        return self.positive + self.negative

    @property
    def pair(self) -> tuple[int, int]:
        return (self.positive, self.negative)

    def __str__(self) -> str:
        return f"({self.positive},{self.negative};0^{self.zero})"


class Matrix:
    """Dense matrix with exact rational entries."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        data = [[_frac(x) for x in row] for row in rows]
        if not data:
            raise ValueError("matrix must have at least one row")
        width = len(data[0])
        if width == 0 or any(len(row) != width for row in data):
            raise ValueError("matrix rows must be non-empty and of equal length")
        object.__setattr__(self, "_rows", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls([[1] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, entries: Sequence[Scalar]) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return tuple(self._rows[i])

    def tolist(self) -> list[list[Fraction]]:
        return [row[:] for row in self._rows]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matrix) and self._rows == other._rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self._rows))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self._rows])

    def __mul__(self, c: Scalar) -> "Matrix":
        c = _frac(c)
        return Matrix([[c * a for a in row] for row in self._rows])

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("incompatible shapes for matrix product")
        bt = list(zip(*other._rows))
        return Matrix(
            [[sum(a * b for a, b in zip(row, col) if a and b) for col in bt] for row in self._rows]
        )

    def _check_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("incompatible shapes")

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self._rows)))

    def matvec(self, v: Sequence[Scalar]) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("incompatible vector length")
        w = [_frac(x) for x in v]
        return [sum(a * x for a, x in zip(row, w) if a and x) for row in self._rows]

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        r = self._rows
        return all(r[i][j] == r[j][i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_zero(self) -> bool:
        return all(not x for row in self._rows for x in row)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum(self._rows[i][i] for i in range(self.rows))


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("incompatible vector lengths")
    return sum(_frac(a) * _frac(b) for a, b in zip(u, v))


def inertia(matrix: Matrix) -> Signature:
    """Exact signature of a symmetric matrix via congruence elimination.

    Diagonal pivots contribute their sign; when every remaining diagonal
    entry is zero but some off-diagonal entry is not, a 2x2 hyperbolic pivot
    [[0,b],[b,0]] contributes one positive and one negative eigenvalue.  No
    eigenvalue is computed, so the result is exact for rational input.
    """
    if not matrix.is_symmetric():
        raise ValueError("inertia requires a symmetric matrix")
    n = matrix.rows
    # Clearing denominators is a positive rescaling of the whole matrix,
    # which leaves the signature unchanged and keeps entry growth down.
    den = math.lcm(*(x.denominator for row in matrix._rows for x in row))
    a = [[x * den for x in row] for row in matrix._rows]

    pos = neg = zero = 0
    k = 0
    while k < n:
        p = next((i for i in range(k, n) if a[i][i]), None)
        if p is None:
            piv = _first_offdiag(a, k, n)
            if piv is None:
                zero += n - k
                break
            i0, j0 = piv
            _swap(a, k, i0)
            _swap(a, k + 1, j0)
            b = a[k][k + 1]
            rk, rk1 = a[k], a[k + 1]
            for i in range(k + 2, n):
                ci, cj = a[i][k], a[i][k + 1]
                if not ci and not cj:
                    continue
                ci, cj = ci / b, cj / b
                ri = a[i]
                for j in range(i, n):
                    ri[j] -= ci * rk1[j] + cj * rk[j]
                    a[j][i] = ri[j]
            pos += 1
            neg += 1
            k += 2
            continue
        if p != k:
            _swap(a, k, p)
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rk = a[k]
        for i in range(k + 1, n):
            f = a[i][k]
            if not f:
                continue
            f = f / d
            ri = a[i]
            for j in range(i, n):
                ri[j] -= f * rk[j]
                a[j][i] = ri[j]
        k += 1
    return Signature(pos, neg, zero)


def _first_offdiag(a, k, n):
    for i in range(k, n):
        ri = a[i]
        for j in range(i + 1, n):
            if ri[j]:
                return i, j
    return None


def _swap(a, i, j):
    if i == j:
        return
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def gower_center(matrix: Matrix, ell: Sequence[Scalar]) -> Matrix:
    """The centered matrix -(I - j l^T) M (I - l j^T) for a weight vector l.

    Requires M symmetric and l^T j = 1 exactly.  Its signature does not
    depend on the choice of l, and for a dissimilarity matrix it is the
    exact (p, q) of a minimum-dimensional pseudo-Euclidean realization.
    """
    if not matrix.is_symmetric():
        raise ValueError("gower_center requires a symmetric matrix")
    w = [_frac(x) for x in ell]
    if len(w) != matrix.rows:
        raise ValueError("weight vector length must match the matrix order")
    if sum(w) != 1:
        raise ValueError("weight vector must satisfy l^T j = 1 exactly")
    s = matrix.matvec(w)
    t = dot(w, s)
    m = matrix._rows
    n = matrix.rows
    return Matrix([[-(m[i][j] - s[i] - s[j] + t) for j in range(n)] for i in range(n)])


def centroid_weights(n: int) -> list[Fraction]:
    """The uniform weight vector j/n."""
    w = Fraction(1, n)
    return [w] * n


def kernel_basis(matrix: Matrix) -> list[list[Fraction]]:
    """Exact basis of the null space; empty list when the matrix is nonsingular."""
    rows, cols = matrix.rows, matrix.cols
    a = [row[:] for row in matrix._rows]
    pivot_cols: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def matrix_to_csv(matrix: Matrix) -> str:
    """Serialize with exact entries: integers plain, fractions as "num/den"."""
    return "\n".join(",".join(str(x) for x in row) for row in matrix._rows) + "\n"


def matrix_from_csv(text: str) -> Matrix:
    rows = [
        [Fraction(tok.strip()) for tok in line.split(",")]
        for line in text.strip().splitlines()
        if line.strip()
    ]
    return Matrix(rows)
