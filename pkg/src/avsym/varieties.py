"""Lattice models of complex abelian varieties.

A variety is the lattice Z^{2g} together with a rational complex structure J
with J² = -I. The dual variety reuses Z^{2g} through the standard dual basis
and carries -Jᵀ; with that convention a polarization form E induces a
complex-linear map into the dual with matrix E itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import DimensionMismatch, NotAnIsogeny, SourceTargetMismatch
from .groups import FiniteAbelianGroup, cokernel_group
from .lattices import lattice_member, rational_kernel
from .matrices import IntMatrix, RatMatrix, block_diag, hstack


@dataclass(frozen=True)
class AbelianVarietyModel:
    """Z^{2g} with a rational complex structure J, J² = -I."""

    g: int
    J: RatMatrix

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("dimension must be positive")
        n = 2 * self.g
        if self.J.shape != (n, n):
            raise ValueError("J must be a 2g x 2g matrix")
        if self.J @ self.J != -RatMatrix.identity(n):
            raise ValueError("J squared must be -identity")

    @property
    def lattice_rank(self):
        return 2 * self.g


@lru_cache(maxsize=None)
def product_elliptic(g: int) -> AbelianVarietyModel:
    """g-fold product of the square elliptic curve; the standard fixture."""
    block = RatMatrix.from_rows([[0, -1], [1, 0]])
    return AbelianVarietyModel(g, block_diag(*([block] * g)))


@lru_cache(maxsize=None)
def dual_av(x: AbelianVarietyModel) -> AbelianVarietyModel:
    return AbelianVarietyModel(x.g, -x.J.transpose())


@lru_cache(maxsize=None)
def product_with_dual(x: AbelianVarietyModel) -> AbelianVarietyModel:
    """The model of X x X̂ on Z^{4g} in (lattice, dual lattice) coordinates."""
    return AbelianVarietyModel(2 * x.g, block_diag(x.J, -x.J.transpose()))


@dataclass(frozen=True)
class Homomorphism:
    """Complex-linear lattice map between variety models."""

    source: AbelianVarietyModel
    target: AbelianVarietyModel
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.lattice_rank, self.source.lattice_rank):
            raise ValueError("matrix shape does not match source and target")
        if self.target.J @ self.matrix != self.matrix.to_rational() @ self.source.J:
            raise ValueError("map does not commute with the complex structures")

    def is_isogeny(self):
        return self.matrix.is_square() and self.matrix.det() != 0


def identity_hom(x: AbelianVarietyModel) -> Homomorphism:
    return Homomorphism(x, x, IntMatrix.identity(x.lattice_rank))


def multiplication_by(k: int, x: AbelianVarietyModel) -> Homomorphism:
    return Homomorphism(x, x, IntMatrix.identity(x.lattice_rank).scale(k))


def dual_hom(f: Homomorphism) -> Homomorphism:
    """The dual map, carried by the transposed matrix."""
    return Homomorphism(dual_av(f.target), dual_av(f.source),
                        f.matrix.transpose())


def hom_compose(f: Homomorphism, h: Homomorphism) -> Homomorphism:
    """f ∘ h. Raises when the endpoints do not match."""
    if h.target != f.source:
        raise SourceTargetMismatch("target of the inner map is not the source of the outer map")
    return Homomorphism(h.source, f.target, f.matrix @ h.matrix)


def isogeny_kernel(f: Homomorphism) -> FiniteAbelianGroup:
    """Kernel of an isogeny as the cokernel of its lattice map."""
    if not f.is_isogeny():
        raise NotAnIsogeny("lattice map is singular")
    return cokernel_group(f.matrix)


@dataclass(frozen=True)
class Polarization:
    """Integral skew form E with E(Jx, Jy) = E(x, y) and E(J·, ·) positive."""

    variety: AbelianVarietyModel
    form: IntMatrix

    def __post_init__(self):
        n = self.variety.lattice_rank
        if self.form.shape != (n, n):
            raise ValueError("form must be 2g x 2g")
        if self.form.transpose() != -self.form:
            raise ValueError("polarization form must be skew")
        j = self.variety.J
        if j.transpose() @ self.form @ j != self.form.to_rational():
            raise ValueError("form is not compatible with the complex structure")
        sym = j.transpose() @ self.form
        if not _positive_definite(sym):
            raise ValueError("associated symmetric form is not positive definite")


def _positive_definite(sym: RatMatrix) -> bool:
    """Exact Sylvester criterion on leading principal minors."""
    n = sym.rows
    for k in range(1, n + 1):
        minor = RatMatrix(k, k, [row[:k] for row in sym.entries[:k]])
        if minor.det() <= 0:
            return False
    return True


def principal_polarization(x: AbelianVarietyModel) -> Polarization:
    """Block sum of the standard 2x2 skew form; valid whenever J is the
    product-elliptic one (or any J it remains compatible with)."""
    block = IntMatrix.from_rows([[0, -1], [1, 0]])
    return Polarization(x, block_diag(*([block] * x.g)))


def phi_from_polarization(l: Polarization) -> Homomorphism:
    """The induced isogeny into the dual, with matrix equal to the form."""
    return Homomorphism(l.variety, dual_av(l.variety), l.form)


def polarization_map_self_dual(f: Homomorphism) -> bool:
    """Self-duality of a map V -> V̂ under the fixed dual conventions.

    With the dual lattice identified by the standard dual basis, the
    double-dual identification absorbs a sign, so the verifiable identity for
    polarization maps is skewness of the matrix.
    """
    return f.matrix.transpose() == -f.matrix


def graph_map_from_polarization(l: Polarization) -> Homomorphism:
    """The symmetric isogeny V -> V̂-dual carried by the positive form JᵀE.

    This is the map whose scaled graphs {(m·f(ξ), ξ)} are the Lagrangian
    graphs used by the transversality search; symmetry of JᵀE is exactly the
    isotropy of those graphs. Requires JᵀE to be integral.
    """
    sym = l.variety.J.transpose() @ l.form
    if not sym.is_integral():
        raise ValueError("positive form is not integral for this complex structure")
    return Homomorphism(l.variety, dual_av(l.variety), sym.to_int())


@dataclass(frozen=True)
class BrauerRepresentative:
    """Order n plus an alternating pairing on the n-torsion, mod n."""

    variety: AbelianVarietyModel
    n: int
    pairing: IntMatrix

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be positive")
        r = self.variety.lattice_rank
        if self.pairing.shape != (r, r):
            raise ValueError("pairing must be 2g x 2g")
        object.__setattr__(self, "pairing", self.pairing.mod(self.n) if self.n > 1
                           else IntMatrix.zeros(r, r))
        if not validate_brauer_rep(self):
            raise ValueError("pairing is not alternating mod n")


def validate_brauer_rep(a: BrauerRepresentative) -> bool:
    n = a.n
    m = a.pairing
    if n == 1:
        return m.is_zero()
    if any(m[i, i] % n for i in range(m.rows)):
        return False
    return ((m.transpose() + m).mod(n)).is_zero()


def trivial_brauer(x: AbelianVarietyModel) -> BrauerRepresentative:
    r = x.lattice_rank
    return BrauerRepresentative(x, 1, IntMatrix.zeros(r, r))


@lru_cache(maxsize=None)
def ns_lattice_basis(x: AbelianVarietyModel) -> IntMatrix:
    """Saturated basis of the lattice of integral skew J-compatible forms,
    as vectorized (2g)²-columns."""
    n = x.lattice_rank
    j = x.J
    rows = []
    # Vectorize E row-major; impose Eᵀ + E = 0 and JᵀEJ - E = 0.
    for i in range(n):
        for k in range(n):
            row = [0] * (n * n)
            row[i * n + k] += 1
            row[k * n + i] += 1
            rows.append([int(v) for v in row])
    jt = j.transpose()
    for a in range(n):
        for b in range(n):
            row = [0] * (n * n)
            for i in range(n):
                for k in range(n):
                    row[i * n + k] += jt[a, i] * j[k, b]
            row[a * n + b] -= 1
            rows.append(row)
    constraint = RatMatrix.from_rows(rows)
    return rational_kernel(constraint).basis


@lru_cache(maxsize=None)
def symmetric_map_basis(x: AbelianVarietyModel) -> IntMatrix:
    """Saturated basis of the lattice of symmetric complex-linear maps from
    the dual of x back to x, as vectorized (2g)²-columns.

    These are exactly the matrices whose scaled graphs are complex Lagrangian
    subtori of the standard model of X x X̂.
    """
    n = x.lattice_rank
    j = x.J
    rows = []
    for i in range(n):
        for k in range(n):
            row = [0] * (n * n)
            row[i * n + k] += 1
            row[k * n + i] -= 1
            rows.append([int(v) for v in row])
    # Complex linearity J S + S Jᵀ = 0 as rows over the vectorized entries.
    for a in range(n):
        for b in range(n):
            row = [Fraction(0)] * (n * n)
            for p in range(n):
                row[p * n + b] += j[a, p]
                row[a * n + p] += j[b, p]
            rows.append(row)
    constraint = RatMatrix.from_rows(rows)
    return rational_kernel(constraint).basis


def ns_difference_test(a: BrauerRepresentative, b: BrauerRepresentative) -> bool:
    """Do two representatives define the same class, i.e. does their
    difference mod n lift to an integral skew J-compatible form?"""
    if a.variety != b.variety or a.n != b.n:
        raise DimensionMismatch("representatives live on different data")
    n = a.n
    if n == 1:
        return True
    x = a.variety
    r = x.lattice_rank
    diff = (a.pairing - b.pairing).mod(n)
    target = [diff[i, k] for i in range(r) for k in range(r)]
    basis = ns_lattice_basis(x)
    span = hstack(basis, IntMatrix.identity(r * r).scale(n))
    return lattice_member(span, target)


@dataclass(frozen=True)
class TorsionPoint:
    """A finite-order point, coordinates in [0, 1) as exact fractions."""

    variety: AbelianVarietyModel
    coords: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) % 1 for c in self.coords)
        object.__setattr__(self, "coords", cs)
        if len(cs) != self.variety.lattice_rank:
            raise ValueError("coordinate length does not match the lattice rank")

    def order(self):
        return lcm(1, *(c.denominator for c in self.coords))


__all__ = [
    "AbelianVarietyModel", "Homomorphism", "Polarization",
    "BrauerRepresentative", "TorsionPoint",
    "product_elliptic", "dual_av", "product_with_dual", "identity_hom",
    "multiplication_by", "dual_hom", "hom_compose", "isogeny_kernel",
    "principal_polarization", "phi_from_polarization",
    "polarization_map_self_dual", "graph_map_from_polarization",
    "validate_brauer_rep", "trivial_brauer", "ns_lattice_basis",
    "ns_difference_test",
]
