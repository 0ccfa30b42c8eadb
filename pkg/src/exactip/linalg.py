"""Exact integer and rational linear algebra on small dense matrices.

Everything here runs on Python's arbitrary-precision integers and
``fractions.Fraction``; no floating point is used anywhere.  Determinants use
fraction-free (Bareiss) elimination, rank/solve/kernel questions are settled
by rational Gaussian elimination, and the Hermite normal form is produced by
unimodular column operations with full transform recovery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations


class DimensionError(ValueError):
    """Operands have incompatible or unsupported shapes."""


class SingularMatrixError(ValueError):
    """A nonsingular matrix was required."""


class DependentColumnsError(ValueError):
    """Linearly independent columns were required."""


class IntMatrix:
    """Dense matrix of arbitrary-precision integers, stored row-major."""

    __slots__ = ("data",)

    def __init__(self, rows):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionError("matrix needs at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DimensionError("ragged rows")
        self.data = data

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols):
        if not cols:
            raise DimensionError("need at least one column")
        return cls([[col[i] for col in cols] for i in range(len(cols[0]))])

    @property
    def rows(self):
        return len(self.data)

    @property
    def cols(self):
        return len(self.data[0])

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return tuple(self.col(j) for j in range(self.cols))

    def select_rows(self, indices):
        return IntMatrix([self.data[i] for i in indices])

    def select_cols(self, indices):
        return IntMatrix([[r[j] for j in indices] for r in self.data])

    def transpose(self):
        return IntMatrix([self.col(j) for j in range(self.cols)])

    def mul(self, other):
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ocols = other.columns()
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ocols] for row in self.data]
        )

    def mat_vec(self, v):
        if len(v) != self.cols:
            raise DimensionError("vector length does not match column count")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.data)

    def max_abs(self):
        return max(abs(x) for row in self.data for x in row)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.data]})"


@dataclass(frozen=True)
class HnfResult:
    """Hermite normal form ``H = A·U`` with the unimodular transform ``U``.

    ``applied_row_permutation`` records the row order the caller supplied;
    `hnf` itself never permutes, so it is always the identity there.
    """

    h: IntMatrix
    u: IntMatrix
    applied_row_permutation: tuple


@dataclass(frozen=True)
class SubdetReport:
    delta_max: int
    has_singular_square_submatrix: bool
    rank: int


def det(m):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise DimensionError("determinant needs a square matrix")
    n = m.rows
    a = [list(r) for r in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        pkk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            rowi = a[i]
            rowk = a[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pkk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pkk
    return sign * a[n - 1][n - 1]


def _rref(rows, width):
    """Reduced row echelon form over the rationals; returns (rows, pivot cols)."""
    rows = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m):
    """Exact rank over the rationals."""
    _, pivots = _rref(m.data, m.cols)
    return len(pivots)


def solve_unique_integral(b, rhs):
    """Solve ``B·x = rhs`` for the unique rational x and keep it only if integral.

    Returns the integer solution tuple, or None when the system is
    inconsistent or the unique solution is non-integral.  Raises
    DependentColumnsError when the columns of ``b`` are not independent
    (there is then no unique solution to speak of).
    """
    k = b.cols
    if len(rhs) != b.rows:
        raise DimensionError("rhs length does not match row count")
    aug = [list(row) + [r] for row, r in zip(b.data, rhs)]
    reduced, pivots = _rref(aug, k + 1)
    if k in pivots:
        # A pivot in the rhs column means 0 = nonzero somewhere: inconsistent.
        if len([p for p in pivots if p < k]) < k:
            raise DependentColumnsError("columns are linearly dependent")
        return None
    if len(pivots) < k:
        raise DependentColumnsError("columns are linearly dependent")
    x = [Fraction(0)] * k
    for r, c in enumerate(pivots):
        x[c] = reduced[r][k]
    if any(v.denominator != 1 for v in x):
        return None
    return tuple(int(v) for v in x)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(m):
    """Hermite normal form of a nonsingular square matrix by column operations.

    Returns ``HnfResult(h, u, perm)`` with ``m·u = h``, ``|det u| = 1``, ``h``
    lower triangular with positive diagonal and ``0 <= h[i][j] < h[i][i]`` for
    ``j < i``.  Row order is taken as given (the permutation is identity).
    """
    if not m.is_square:
        raise DimensionError("hnf needs a square matrix")
    n = m.rows
    h = [list(r) for r in m.data]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def colop(j1, j2, a11, a12, a21, a22):
        # (col j1, col j2) <- (a11*col j1 + a21*col j2, a12*col j1 + a22*col j2)
        for mat in (h, u):
            for row in mat:
                v1, v2 = row[j1], row[j2]
                row[j1] = a11 * v1 + a21 * v2
                row[j2] = a12 * v1 + a22 * v2

    for i in range(n):
        for j in range(i + 1, n):
            if h[i][j] == 0:
                continue
            a, b = h[i][i], h[i][j]
            g, p, q = _xgcd(a, b)
            colop(i, j, p, -(b // g), q, a // g)
        if h[i][i] < 0:
            for mat in (h, u):
                for row in mat:
                    row[i] = -row[i]
        if h[i][i] == 0:
            raise SingularMatrixError("matrix is singular")
        for j in range(i):
            q = h[i][j] // h[i][i]
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[j] -= q * row[i]
    return HnfResult(IntMatrix(h), IntMatrix(u), tuple(range(n)))


def subdet_scan(a):
    """Enumerate all maximal square row-submatrices of a tall matrix.

    Reports the largest absolute subdeterminant, whether any submatrix is
    singular, and the rank of the full matrix.
    """
    if a.rows < a.cols:
        raise DimensionError("need at least as many rows as columns")
    n = a.cols
    delta_max = 0
    singular = False
    for rows in combinations(range(a.rows), n):
        d = det(a.select_rows(rows))
        if d == 0:
            singular = True
        delta_max = max(delta_max, abs(d))
    return SubdetReport(delta_max, singular, rank(a))


def integer_kernel_vector(b):
    """A nonzero primitive integer vector d with ``b·d = 0``, or None.

    The result has gcd of entries 1 and its first nonzero entry positive.
    Returns None exactly when the columns of ``b`` are independent.
    """
    k = b.cols
    reduced, pivots = _rref(b.data, k)
    if len(pivots) == k:
        return None
    free = next(c for c in range(k) if c not in pivots)
    x = [Fraction(0)] * k
    x[free] = Fraction(1)
    for r, c in enumerate(pivots):
        x[c] = -reduced[r][free]
    scale = math.lcm(*(v.denominator for v in x))
    ints = [int(v * scale) for v in x]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def adjugate(m):
    """Adjugate matrix: ``m · adjugate(m) = det(m) · I`` exactly."""
    if not m.is_square:
        raise DimensionError("adjugate needs a square matrix")
    n = m.rows
    if n == 1:
        return IntMatrix([[1]])
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = IntMatrix(
                [[m.data[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            )
            cof[i][j] = (-1) ** (i + j) * det(minor)
    # adj = cofactor matrix transposed
    return IntMatrix([[cof[j][i] for j in range(n)] for i in range(n)])


def gcd_normalize_row(row, rhs, sense):
    """Divide a constraint row by the gcd of its entries.

    For ``sense="equality"`` the constraint is row·x = rhs: returns None when
    the gcd does not divide rhs (no integer solutions).  For
    ``sense="inequality"`` (row·x <= rhs) the rhs is floor-divided, which
    preserves the integer solution set.  The row must be nonzero.
    """
    if sense not in ("equality", "inequality"):
        raise ValueError(f"unknown sense {sense!r}")
    if all(v == 0 for v in row):
        raise ValueError("zero row must be handled by the caller")
    g = math.gcd(*(abs(v) for v in row))
    if g == 1:
        return tuple(row), rhs
    new_row = tuple(v // g for v in row)
    if sense == "equality":
        if rhs % g != 0:
            return None
        return new_row, rhs // g
    # g > 0, so // is the floor division the inequality needs for any rhs sign.
    return new_row, rhs // g
