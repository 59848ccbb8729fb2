"""Exact dense matrices over Z and Q.

Thin immutable wrappers around tuples of Python ints / ``fractions.Fraction``.
Matrices in this package stay tiny (a few dozen rows at most), so everything
is schoolbook arithmetic; correctness and reproducibility beat speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _as_tuple_grid(entries, cast):
    return tuple(tuple(cast(x) for x in row) for row in entries)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        grid = _as_tuple_grid(self.entries, int)
        object.__setattr__(self, "entries", grid)
        if len(grid) != self.rows or any(len(r) != self.cols for r in grid):
            raise ValueError("entry grid does not match declared shape")

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         [self.column(j) for j in range(self.cols)])

    def __add__(self, other):
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)]
                          for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r, s)]
                          for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return IntMatrix(self.rows, self.cols,
                         [[-a for a in r] for r in self.entries])

    def scale(self, k):
        k = int(k)
        return IntMatrix(self.rows, self.cols,
                         [[k * a for a in r] for r in self.entries])

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            return self.to_rational() @ other
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ot = other.transpose().entries
        return IntMatrix(self.rows, other.cols,
                         [[sum(a * b for a, b in zip(row, col)) for col in ot]
                          for row in self.entries])

    def mul_vector(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def is_zero(self):
        return all(a == 0 for r in self.entries for a in r)

    def is_square(self):
        return self.rows == self.cols

    def mod(self, n):
        return IntMatrix(self.rows, self.cols,
                         [[a % n for a in r] for r in self.entries])

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_rational(self):
        return RatMatrix(self.rows, self.cols, self.entries)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix; entries are reduced Fractions."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        grid = _as_tuple_grid(self.entries, Fraction)
        object.__setattr__(self, "entries", grid)
        if len(grid) != self.rows or any(len(r) != self.cols for r in grid):
            raise ValueError("entry grid does not match declared shape")

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def transpose(self):
        return RatMatrix(self.cols, self.rows,
                         [self.column(j) for j in range(self.cols)])

    def __add__(self, other):
        other = _coerce_rational(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)]
                          for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        other = _coerce_rational(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r, s)]
                          for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return RatMatrix(self.rows, self.cols,
                         [[-a for a in r] for r in self.entries])

    def scale(self, k):
        k = Fraction(k)
        return RatMatrix(self.rows, self.cols,
                         [[k * a for a in r] for r in self.entries])

    def __matmul__(self, other):
        other = _coerce_rational(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        # Clear denominators once so the inner products run on plain ints;
        # Fraction arithmetic per term is an order of magnitude slower.
        da = self.denominator_lcm()
        db = other.denominator_lcm()
        a = [[int(x * da) for x in row] for row in self.entries]
        bt = [[int(other.entries[i][j] * db) for i in range(other.rows)]
              for j in range(other.cols)]
        d = da * db
        return RatMatrix(self.rows, other.cols,
                         [[Fraction(sum(x * y for x, y in zip(ra, cb)), d)
                           for cb in bt] for ra in a])

    def mul_vector(self, vec):
        vec = [Fraction(v) for v in vec]
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def is_integral(self):
        return all(a.denominator == 1 for r in self.entries for a in r)

    def to_int(self):
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(self.rows, self.cols,
                         [[int(a) for a in r] for r in self.entries])

    def denominator_lcm(self):
        from math import lcm
        d = 1
        for r in self.entries:
            for a in r:
                d = lcm(d, a.denominator)
        return d

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.entries]
        n = self.rows
        out = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                out = -out
            out *= a[k][k]
            inv = 1 / a[k][k]
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    f = a[i][k] * inv
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
        return out

    def inverse(self):
        """Exact inverse by Gauss-Jordan elimination."""
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.entries)]
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            a[k], a[piv] = a[piv], a[k]
            inv = 1 / a[k][k]
            a[k] = [x * inv for x in a[k]]
            for i in range(n):
                if i != k and a[i][k] != 0:
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return RatMatrix(n, n, [row[n:] for row in a])

    def solve(self, rhs):
        """Solve self @ x = rhs exactly; rhs is a vector. Raises if singular
        or inconsistent."""
        m, n = self.rows, self.cols
        rhs = [Fraction(v) for v in rhs]
        if len(rhs) != m:
            raise ValueError("rhs length mismatch")
        a = [list(r) + [rhs[i]] for i, r in enumerate(self.entries)]
        pivots = []
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, m) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = 1 / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(m):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == m:
                break
        for i in range(r, m):
            if a[i][n] != 0:
                raise ValueError("inconsistent linear system")
        x = [Fraction(0)] * n
        for i, c in enumerate(pivots):
            x[c] = a[i][n]
        return tuple(x)


def _coerce_rational(m):
    return m.to_rational() if isinstance(m, IntMatrix) else m


def hstack(a, b):
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    kind = IntMatrix if isinstance(a, IntMatrix) and isinstance(b, IntMatrix) else RatMatrix
    if kind is RatMatrix:
        a, b = _coerce_rational(a), _coerce_rational(b)
    return kind(a.rows, a.cols + b.cols,
                [ra + rb for ra, rb in zip(a.entries, b.entries)])


def vstack(a, b):
    if a.cols != b.cols:
        raise ValueError("column count mismatch")
    kind = IntMatrix if isinstance(a, IntMatrix) and isinstance(b, IntMatrix) else RatMatrix
    if kind is RatMatrix:
        a, b = _coerce_rational(a), _coerce_rational(b)
    return kind(a.rows + b.rows, a.cols, a.entries + b.entries)


def block_diag(*mats):
    if not mats:
        return IntMatrix.zeros(0, 0)
    kind = IntMatrix if all(isinstance(m, IntMatrix) for m in mats) else RatMatrix
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    zero = 0
    grid = [[zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                grid[r0 + i][c0 + j] = m.entries[i][j]
        r0 += m.rows
        c0 += m.cols
    return kind(rows, cols, grid)


def from_columns(cols, rows=None):
    """Build a matrix whose columns are the given vectors."""
    if not cols:
        if rows is None:
            raise ValueError("need explicit row count for an empty column set")
        return IntMatrix.zeros(rows, 0)
    n = len(cols[0])
    if any(len(c) != n for c in cols):
        raise ValueError("ragged column set")
    if all(isinstance(x, int) for c in cols for x in c):
        return IntMatrix(n, len(cols), [[c[i] for c in cols] for i in range(n)])
    return RatMatrix(n, len(cols), [[c[i] for c in cols] for i in range(n)])
