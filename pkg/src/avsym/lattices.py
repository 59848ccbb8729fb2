"""Integer lattice algorithms: Smith and Hermite normal forms, saturation,
kernels, and intersections.

All transforms are tracked exactly so that every decomposition can be
re-verified by multiplication. Pivoting is deterministic (smallest nonzero
absolute value, first occurrence in row-major scan order), which makes every
output reproducible across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .matrices import IntMatrix, RatMatrix, from_columns, hstack


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V = S with U, V unimodular and S in Smith normal form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    invariant_factors: tuple

    @property
    def rank(self):
        return len(self.invariant_factors)


def snf(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivot choice: the submatrix entry of smallest nonzero absolute value,
    scanning rows then columns, strict improvement only. After each pivot is
    isolated it is made to divide every entry of the remaining submatrix, so
    the diagonal comes out as a divisibility chain.
    """
    nr, nc = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] -= q * row[src]
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while t < min(nr, nc):
        piv = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best, piv = x, (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # Clear the pivot column, re-selecting a smaller pivot whenever a
            # reduction leaves a nonzero remainder.
            progressed = True
            while progressed:
                progressed = False
                for i in range(t + 1, nr):
                    if a[i][t]:
                        q = a[i][t] // a[t][t]
                        add_row(i, t, q)
                        if a[i][t]:
                            swap_rows(t, i)
                            progressed = True
                for j in range(t + 1, nc):
                    if a[t][j]:
                        q = a[t][j] // a[t][t]
                        add_col(j, t, q)
                        if a[t][j]:
                            swap_cols(t, j)
                            progressed = True
            # Pivot now divides its row and column; force it to divide the
            # rest of the submatrix as well.
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    factors = tuple(a[i][i] for i in range(min(nr, nc)) if a[i][i] != 0)
    return SmithDecomposition(
        IntMatrix(nr, nr, u), IntMatrix(nr, nc, a), IntMatrix(nc, nc, v), factors
    )


def invariant_factors(m: IntMatrix) -> tuple:
    return snf(m).invariant_factors


def row_hnf(m: IntMatrix) -> IntMatrix:
    """Canonical row-style Hermite normal form.

    Row span is preserved; pivots are positive and are the first nonzero
    entry of their row, entries above each pivot are reduced into
    [0, pivot), zero rows sink to the bottom. The output is the unique such
    matrix for the row span, so equality of row spans is equality of forms.
    """
    nr, nc = m.rows, m.cols
    a = [list(row) for row in m.entries]
    r = 0
    for c in range(nc):
        if r == nr:
            break
        while True:
            nz = [i for i in range(r, nr) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
            done = True
            for i in range(r + 1, nr):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return IntMatrix(nr, nc, a)


def hnf(m: IntMatrix) -> IntMatrix:
    """Canonical column-style Hermite normal form (same column span).

    Implemented as the transpose of the row form: lower triangular with
    positive pivots, the off-pivot entries in each pivot row reduced into
    [0, pivot), zero columns last.
    """
    return row_hnf(m.transpose()).transpose()


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Saturated basis of the integer kernel {x in Z^cols : m @ x = 0}."""
    dec = snf(m)
    r = dec.rank
    cols = [dec.V.column(j) for j in range(r, m.cols)]
    return hnf(from_columns(cols, rows=m.cols))


def _drop_zero_columns(m: IntMatrix) -> IntMatrix:
    cols = [m.column(j) for j in range(m.cols) if any(m.column(j))]
    return from_columns(cols, rows=m.rows)


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^ambient_rank given by an independent column basis.

    The basis is stored in canonical (column-Hermite) form, so two values
    compare equal exactly when they present the same sublattice.
    """

    ambient_rank: int
    basis: IntMatrix
    saturated: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.basis.rows != self.ambient_rank:
            raise ValueError("basis rows do not match ambient rank")
        canon = _drop_zero_columns(hnf(self.basis))
        if canon.cols != self.basis.cols:
            raise ValueError("basis columns are linearly dependent")
        object.__setattr__(self, "basis", canon)
        if self.saturated and _saturation_basis(canon) != canon:
            raise ValueError("sublattice marked saturated is not")

    @property
    def rank(self):
        return self.basis.cols

    def contains(self, vec) -> bool:
        """Exact membership of an integer vector in the lattice."""
        return lattice_member(self.basis, vec)


def sublattice(columns, ambient_rank=None, saturated=False) -> Sublattice:
    """Build a sublattice from an iterable of integer column vectors."""
    cols = [tuple(int(x) for x in c) for c in columns]
    if ambient_rank is None:
        if not cols:
            raise ValueError("ambient rank needed for the zero sublattice")
        ambient_rank = len(cols[0])
    return Sublattice(ambient_rank, from_columns(cols, rows=ambient_rank),
                      saturated=saturated)


def _saturation_basis(b: IntMatrix) -> IntMatrix:
    """Canonical basis of the saturation of a column span.

    Computed as the double integer annihilator: the saturation is the integer
    kernel of the transpose of a basis for the rational orthogonal complement.
    """
    if b.cols == 0:
        return b
    comp = kernel_basis(b.transpose())
    return kernel_basis(comp.transpose())


def saturate(s: Sublattice) -> Sublattice:
    """Smallest sublattice with torsion-free quotient containing s."""
    return Sublattice(s.ambient_rank, _saturation_basis(s.basis), saturated=True)


def rational_kernel(m: RatMatrix) -> Sublattice:
    """Saturated integer basis of ker(m) intersected with Z^cols."""
    scaled = m.scale(m.denominator_lcm()).to_int()
    return Sublattice(m.cols, kernel_basis(scaled), saturated=True)


def lattice_intersect(s: Sublattice, t: Sublattice) -> Sublattice:
    """Intersection of two sublattices of the same ambient lattice."""
    if s.ambient_rank != t.ambient_rank:
        raise ValueError("ambient ranks differ")
    if s.rank == 0 or t.rank == 0:
        return Sublattice(s.ambient_rank, IntMatrix.zeros(s.ambient_rank, 0))
    combined = hstack(s.basis, -t.basis)
    ker = kernel_basis(combined)
    top = IntMatrix(s.rank, ker.cols,
                    [ker.row(i) for i in range(s.rank)])
    return Sublattice(s.ambient_rank, s.basis @ top)


def lattice_member(basis: IntMatrix, vec) -> bool:
    """Is vec in the integer column span of basis?"""
    vec = tuple(int(x) for x in vec)
    if len(vec) != basis.rows:
        raise ValueError("vector length mismatch")
    dec = snf(basis)
    w = dec.U.mul_vector(vec)
    r = dec.rank
    for i, d in enumerate(dec.invariant_factors):
        if w[i] % d:
            return False
    return all(w[i] == 0 for i in range(r, basis.rows))


def column_span_index(outer: IntMatrix, inner: IntMatrix):
    """Index [outer : inner] of nested full-rank column spans.

    Returns the list of invariant factors of outer/inner (1s dropped).
    Raises if inner is not contained in outer.
    """
    sol = []
    outer_q = outer.to_rational()
    for j in range(inner.cols):
        x = outer_q.solve(inner.column(j))
        if any(f.denominator != 1 for f in x):
            raise ValueError("inner lattice is not contained in outer lattice")
        sol.append(tuple(int(f) for f in x))
    rel = from_columns(sol, rows=outer.cols)
    return tuple(d for d in snf(rel).invariant_factors if d != 1)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    inv = m.to_rational().inverse()
    return inv.to_int()


def solve_integer(a: IntMatrix, vec):
    """Solve a @ x = vec requiring an integer solution; None if there is none."""
    try:
        x = a.to_rational().solve(vec)
    except ValueError:
        return None
    if any(f.denominator != 1 for f in x):
        return None
    return tuple(int(f) for f in x)


def count_solutions_mod(m: IntMatrix, n: int) -> int:
    """Number of x in (Z/n)^cols with m @ x = 0 (mod n)."""
    padded = hstack(m, IntMatrix.identity(m.rows).scale(n))
    # Solutions biject with (L / nZ^cols) where L is the projection of the
    # integer kernel onto the x block; the count is the index of nZ^cols.
    ker = kernel_basis(padded)
    top = IntMatrix(m.cols, ker.cols, [ker.row(i) for i in range(m.cols)])
    lat = hnf(top)
    d = _drop_zero_columns(lat)
    if d.cols < m.cols:
        raise ValueError("solution lattice unexpectedly degenerate")
    sq = IntMatrix(m.cols, m.cols, [d.row(i) for i in range(m.cols)])
    det = abs(sq.det())
    total = n ** m.cols
    if total % det:
        raise ValueError("inconsistent solution count")
    return total // det
