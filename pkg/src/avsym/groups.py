"""Finite abelian groups with Q/Z-valued alternating pairings.

Groups are presented by their invariant factors; elements are coordinate
tuples relative to the invariant-factor generators, reduced mod each factor.
Pairings take additive values in Q/Z represented as fractions in [0, 1),
with 1/m standing in for a primitive m-th root of unity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegeneratePairing, InfiniteCokernel
from .lattices import IntMatrix, hstack, kernel_basis, snf, unimodular_inverse
from .matrices import from_columns


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """⊕ Z/mᵢZ with m₁ | m₂ | ... and every mᵢ >= 2; () is the trivial group."""

    invariant_factors: tuple

    def __post_init__(self):
        fs = tuple(int(m) for m in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for m in fs:
            if m < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def rank(self):
        return len(self.invariant_factors)

    def order(self):
        return math.prod(self.invariant_factors)

    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self):
        return not self.invariant_factors

    def reduce(self, vec):
        return tuple(int(x) % m for x, m in zip(vec, self.invariant_factors))

    def add(self, x, y):
        return self.reduce(a + b for a, b in zip(x, y))

    def neg(self, x):
        return self.reduce(-a for a in x)

    def scalar_mul(self, k, x):
        return self.reduce(k * a for a in x)

    def element_order(self, vec):
        return math.lcm(1, *(m // math.gcd(x, m)
                             for x, m in zip(self.reduce(vec), self.invariant_factors)))

    def elements(self):
        return itertools.product(*(range(m) for m in self.invariant_factors))


def cokernel_group(m: IntMatrix) -> FiniteAbelianGroup:
    """Z^n / column span of m, for square nonsingular m."""
    if not m.is_square():
        raise InfiniteCokernel("cokernel of a non-square matrix is infinite")
    if m.det() == 0:
        raise InfiniteCokernel("matrix is singular; cokernel is infinite")
    return FiniteAbelianGroup(tuple(d for d in invariant_factor_list(m) if d != 1))


def invariant_factor_list(m: IntMatrix) -> tuple:
    return snf(m).invariant_factors


@dataclass(frozen=True)
class AlternatingPairing:
    """Q/Z-valued alternating pairing given on invariant-factor generators."""

    group: FiniteAbelianGroup
    matrix: tuple

    def __post_init__(self):
        k = self.group.rank
        grid = tuple(tuple(Fraction(x) % 1 for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", grid)
        if len(grid) != k or any(len(r) != k for r in grid):
            raise ValueError("pairing matrix shape does not match the group")
        fs = self.group.invariant_factors
        for i in range(k):
            if grid[i][i] != 0:
                raise ValueError("pairing is not alternating on a generator")
            for j in range(k):
                if (grid[i][j] + grid[j][i]) % 1 != 0:
                    raise ValueError("pairing is not antisymmetric")
                if (fs[i] * grid[i][j]) % 1 != 0 or (fs[j] * grid[i][j]) % 1 != 0:
                    raise ValueError("pairing value order incompatible with the group")

    def evaluate(self, x, y) -> Fraction:
        x = self.group.reduce(x)
        y = self.group.reduce(y)
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.matrix[i]
                total += xi * sum(yj * row[j] for j, yj in enumerate(y) if yj)
        return total % 1


def zero_pairing(group: FiniteAbelianGroup) -> AlternatingPairing:
    k = group.rank
    return AlternatingPairing(group, tuple((Fraction(0),) * k for _ in range(k)))


@dataclass(frozen=True)
class SquareDecomposition:
    """Result of testing whether a group has shape ⊕ (Z/mᵢZ)²."""

    is_square_type: bool
    m_list: tuple

    def __post_init__(self):
        object.__setattr__(self, "m_list", tuple(int(m) for m in self.m_list))


def square_type_test(g: FiniteAbelianGroup) -> SquareDecomposition:
    fs = g.invariant_factors
    if len(fs) % 2:
        return SquareDecomposition(False, ())
    pairs = []
    for i in range(0, len(fs), 2):
        if fs[i] != fs[i + 1]:
            return SquareDecomposition(False, ())
        pairs.append(fs[i])
    return SquareDecomposition(True, tuple(pairs))


def heisenberg_pairing(k: FiniteAbelianGroup) -> AlternatingPairing:
    """Commutator pairing on K ⊕ K̂ in hyperbolic generator order.

    Generators come interleaved as (k₁, χ₁, k₂, χ₂, ...), one hyperbolic
    plane per invariant factor, so the pairing matrix is block diagonal with
    e(kᵢ, χᵢ) = 1/mᵢ.
    """
    fs = k.invariant_factors
    doubled = tuple(m for m in fs for _ in range(2))
    group = FiniteAbelianGroup(doubled)
    n = len(doubled)
    grid = [[Fraction(0)] * n for _ in range(n)]
    for i, m in enumerate(fs):
        grid[2 * i][2 * i + 1] = Fraction(1, m)
        grid[2 * i + 1][2 * i] = Fraction(-1, m) % 1
    return AlternatingPairing(group, grid)


def _solution_subgroup(constraints, modulus, factors):
    """Generators and orders of {x in ⊕ Z/mᵢ : constraints @ x = 0 mod modulus}.

    constraints is an IntMatrix with one column per group generator. Returns
    a list of (coordinate_vector, order) pairs with orders > 1 forming a
    divisibility chain; the listed elements generate the subgroup
    independently.
    """
    k = len(factors)
    if k == 0:
        return []
    nconstr = constraints.rows
    if nconstr == 0:
        return [(tuple(int(i == j) for j in range(k)), factors[i])
                for i in range(k)]
    padded = hstack(constraints, IntMatrix.identity(nconstr).scale(modulus))
    ker = kernel_basis(padded)
    proj = IntMatrix(k, ker.cols, [ker.row(i) for i in range(k)])
    basis_cols = [proj.column(j) for j in range(proj.cols) if any(proj.column(j))]
    b = from_columns(basis_cols, rows=k)
    if len(snf(b).invariant_factors) != k:
        raise ValueError("solution lattice has unexpected rank")
    # Relation matrix of the subgroup presented on the lattice basis.
    diag = IntMatrix(k, k, [[factors[i] if i == j else 0 for j in range(k)]
                            for i in range(k)])
    rel_cols = []
    bq = b.to_rational()
    for j in range(k):
        x = bq.solve(diag.column(j))
        if any(f.denominator != 1 for f in x):
            raise ValueError("relation lattice is not integral")
        rel_cols.append(tuple(int(f) for f in x))
    rel = from_columns(rel_cols, rows=b.cols)
    dec = snf(rel)
    uinv = unimodular_inverse(dec.U)
    gens = b @ uinv
    out = []
    for i, order in enumerate(dec.invariant_factors):
        if order > 1:
            vec = tuple(gens.column(i)[j] % factors[j] for j in range(k))
            out.append((vec, order))
    return out


def pairing_is_nondegenerate(e: AlternatingPairing) -> bool:
    """True iff x ↦ e(x, ·) is injective, by exact lattice arithmetic."""
    g = e.group
    if g.is_trivial():
        return True
    n = g.exponent()
    k = g.rank
    scaled = IntMatrix(k, k, [[int(n * v) for v in row] for row in e.matrix])
    radical = _solution_subgroup(scaled.transpose(), n, g.invariant_factors)
    return not radical


def symplectic_basis(e: AlternatingPairing):
    """Hyperbolic generators for a nondegenerate alternating pairing.

    Returns (SquareDecomposition, gens) where gens is a (rank x 2r) integer
    matrix whose columns a₁, b₁, ..., a_r, b_r satisfy e(aᵢ, bᵢ) = 1/mᵢ and
    pair to zero otherwise, with m₁ | m₂ | ... matching the group's
    invariant-factor pairs.

    The working element of maximal order is always the last generator of the
    current complement presentation, which is the lexicographically first
    maximal-order element in those coordinates.
    """
    if not pairing_is_nondegenerate(e):
        raise DegeneratePairing("symplectic basis needs a nondegenerate pairing")
    g = e.group
    k = g.rank
    # Presentation of the current orthogonal complement: independent
    # generators (as coordinate vectors of g) with a divisibility chain of
    # orders.
    pres = [(tuple(int(i == j) for j in range(k)), g.invariant_factors[i])
            for i in range(k)]
    pairs = []
    while pres:
        gens = [vec for vec, _ in pres]
        orders = [order for _, order in pres]
        a = gens[-1]
        delta = orders[-1]
        vals = [e.evaluate(a, v) for v in gens]
        units = [int(val * delta) % delta for val in vals]
        coeffs = _combination_with_unit_gcd(units, delta)
        if coeffs is None:
            raise DegeneratePairing("no hyperbolic partner exists")
        b = tuple(0 for _ in range(k))
        for c, v in zip(coeffs, gens):
            b = g.add(b, g.scalar_mul(c, v))
        if e.evaluate(a, b) != Fraction(1, delta):
            raise DegeneratePairing("partner does not realize the hyperbolic value")
        pairs.append((a, b, delta))
        rows = []
        for probe in (a, b):
            rows.append([int(e.evaluate(probe, v) * delta) % delta for v in gens])
        constraints = IntMatrix(2, len(gens), rows)
        sub = _solution_subgroup(constraints, delta, tuple(orders))
        pres = [(_combine(g, gens, vec), order) for vec, order in sub]
    pairs.reverse()
    m_list = tuple(m for _, _, m in pairs)
    cols = []
    for a, b, _ in pairs:
        cols.append(a)
        cols.append(b)
    gens_matrix = (from_columns(cols, rows=k) if cols else IntMatrix.zeros(k, 0))
    return SquareDecomposition(True, m_list), gens_matrix


def _combine(group, gens, coeffs):
    out = tuple(0 for _ in range(group.rank))
    for c, v in zip(coeffs, gens):
        if c:
            out = group.add(out, group.scalar_mul(c, v))
    return out


def _combination_with_unit_gcd(units, modulus):
    """Coefficients c with sum(cᵢ * unitsᵢ) = 1 mod modulus, or None."""
    g = modulus
    for u in units:
        g = math.gcd(g, u)
    if g != 1:
        return None
    # Fold an extended gcd across the list; the invariant is
    # sum(acc_coeffs * units) = acc (mod modulus).
    acc = modulus
    acc_coeffs = [0] * len(units)
    for i, u in enumerate(units):
        gg, x, y = _xgcd(acc, u)
        acc_coeffs = [x * c for c in acc_coeffs]
        acc_coeffs[i] += y
        acc = gg
        if acc == 1:
            break
    return [c % modulus for c in acc_coeffs]


def _xgcd(a, b):
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


@dataclass(frozen=True)
class HomogeneousBundleData:
    """Torsion datum (n, H, e) classifying an irreducible homogeneous bundle."""

    n: int
    group: FiniteAbelianGroup
    pairing: AlternatingPairing

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("bundle degree must be positive")
        if self.pairing.group != self.group:
            raise ValueError("pairing lives on a different group")


def validate_bundle_data(d: HomogeneousBundleData) -> bool:
    if d.group.order() != d.n ** 2:
        return False
    if d.n % d.group.exponent():
        return False
    return pairing_is_nondegenerate(d.pairing)
