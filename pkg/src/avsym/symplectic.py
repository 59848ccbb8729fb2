"""Symplectic abelian varieties as unimodular skew lattices, Lagrangian
sublattice calculus, and the twisted quotient construction.

The standard model of X x X̂ carries the form <(x,ξ),(y,η)> = η(x) - ξ(y);
in block shape Psi = [[0, I], [-I, 0]]. Flipping the global sign would negate
every form value without changing any decision this module makes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (DimensionMismatch, InfiniteIntersection, NotDivisible,
                     NotIsotropic, NotSymmetric, SearchExhausted,
                     SourceTargetMismatch, TheoremViolation)
from .groups import (AlternatingPairing, FiniteAbelianGroup, SquareDecomposition,
                     cokernel_group, pairing_is_nondegenerate, square_type_test)
from .lattices import (Sublattice, count_solutions_mod, hnf, kernel_basis,
                       lattice_intersect, rational_kernel, saturate, snf,
                       sublattice)
from .matrices import (IntMatrix, RatMatrix, block_diag, from_columns, hstack,
                       vstack)
from .varieties import (AbelianVarietyModel, BrauerRepresentative, Homomorphism,
                        Polarization, TorsionPoint, dual_av,
                        graph_map_from_polarization, product_with_dual)


@dataclass(frozen=True)
class SymplecticAV:
    """Lattice Z^{2N} with a unimodular skew form and a compatible J."""

    N: int
    J: RatMatrix
    form: IntMatrix

    def __post_init__(self):
        n = 2 * self.N
        if self.form.shape != (n, n) or self.J.shape != (n, n):
            raise ValueError("form and J must be 2N x 2N")
        if self.form.transpose() != -self.form:
            raise ValueError("form must be skew")
        if abs(self.form.det()) != 1:
            raise ValueError("form must be unimodular")
        if self.J @ self.J != -RatMatrix.identity(n):
            raise ValueError("J squared must be -identity")
        if self.J.transpose() @ self.form @ self.J != self.form.to_rational():
            raise ValueError("form is not compatible with J")

    @property
    def lattice_rank(self):
        return 2 * self.N

    def as_variety(self) -> AbelianVarietyModel:
        return AbelianVarietyModel(self.N, self.J)

    def pair(self, x, y) -> Fraction:
        """Form value on rational coordinate vectors."""
        x = [Fraction(v) for v in x]
        y = [Fraction(v) for v in y]
        return sum(x[i] * self.form[i, j] * y[j]
                   for i in range(self.lattice_rank)
                   for j in range(self.lattice_rank)
                   if self.form[i, j])


@lru_cache(maxsize=None)
def standard_symplectic(x: AbelianVarietyModel) -> SymplecticAV:
    """X x X̂ with the Poincare-type form in (lattice, dual-lattice) blocks."""
    n = x.lattice_rank
    eye = IntMatrix.identity(n)
    zero = IntMatrix.zeros(n, n)
    form = vstack(hstack(zero, eye), hstack(-eye, zero))
    j = block_diag(x.J, -x.J.transpose())
    return SymplecticAV(n, j, form)


def is_lagrangian(s: Sublattice, a: SymplecticAV) -> bool:
    """Saturated, half rank, isotropic, with unimodular quotient pairing."""
    if s.ambient_rank != a.lattice_rank:
        raise DimensionMismatch("sublattice does not live in the ambient lattice")
    if s.rank != a.N:
        return False
    if not s.saturated and saturate(s) != s:
        return False
    b = s.basis
    if not (b.transpose() @ a.form @ b).is_zero():
        return False
    quot = (a.form @ b).transpose()
    return snf(quot).invariant_factors == (1,) * a.N


@dataclass(frozen=True)
class LagrangianSublattice:
    """A verified Lagrangian sublattice of a symplectic lattice."""

    ambient: SymplecticAV
    lattice: Sublattice

    def __post_init__(self):
        if not is_lagrangian(self.lattice, self.ambient):
            raise ValueError("sublattice is not Lagrangian")

    @property
    def basis(self) -> IntMatrix:
        return self.lattice.basis


def _expect_lagrangian(ambient, lat, context) -> LagrangianSublattice:
    try:
        return LagrangianSublattice(ambient, lat)
    except ValueError as exc:
        raise TheoremViolation(f"{context}: {exc}") from exc


def first_factor_lagrangian(a: SymplecticAV) -> LagrangianSublattice:
    """span{e_1..e_N}; Lagrangian in every standard model."""
    n = a.lattice_rank
    cols = [tuple(int(i == j) for i in range(n)) for j in range(a.N)]
    return LagrangianSublattice(a, sublattice(cols, ambient_rank=n, saturated=True))


def second_factor_lagrangian(a: SymplecticAV) -> LagrangianSublattice:
    """span{e_{N+1}..e_{2N}}; Lagrangian in every standard model."""
    n = a.lattice_rank
    cols = [tuple(int(i == j + a.N) for i in range(n)) for j in range(a.N)]
    return LagrangianSublattice(a, sublattice(cols, ambient_rank=n, saturated=True))


@dataclass(frozen=True)
class SymplecticMorphism:
    """Isogeny f with multiplier n: n * form_source = Fᵀ form_target F."""

    source: SymplecticAV
    target: SymplecticAV
    matrix: IntMatrix
    multiplier: int

    def __post_init__(self):
        if self.multiplier < 1:
            raise ValueError("multiplier must be >= 1")
        if self.matrix.shape != (self.target.lattice_rank, self.source.lattice_rank):
            raise ValueError("matrix shape mismatch")
        if self.matrix.det() == 0:
            raise ValueError("symplectic morphisms must be isogenies")
        lhs = self.source.form.scale(self.multiplier)
        if self.matrix.transpose() @ self.target.form @ self.matrix != lhs:
            raise ValueError("multiplier relation fails")
        if self.target.J @ self.matrix != self.matrix.to_rational() @ self.source.J:
            raise ValueError("morphism does not commute with complex structures")

    def is_isomorphism(self):
        return self.multiplier == 1 and abs(self.matrix.det()) == 1


def identity_morphism(a: SymplecticAV) -> SymplecticMorphism:
    return SymplecticMorphism(a, a, IntMatrix.identity(a.lattice_rank), 1)


def _symmetric_torsion_lift(rep: BrauerRepresentative) -> IntMatrix:
    """Symmetric integer matrix acting on the n-torsion for a representative.

    Mirrors the strictly-lower triangle of the stored pairing across the
    diagonal. The resulting graph subgroup is isotropic for n times the
    standard form (exactly, not just mod n), which is what makes the
    descended form integral for every order n.
    """
    m = rep.pairing
    r = m.rows
    return IntMatrix(r, r, [[m[max(i, j), min(i, j)] for j in range(r)]
                            for i in range(r)])


def graph_subgroup_generators(rep: BrauerRepresentative) -> list:
    """Generators of the torsion graph subgroup of X x X̂ attached to rep."""
    x = rep.variety
    n = rep.n
    prod = product_with_dual(x)
    if n == 1:
        return []
    lift = _symmetric_torsion_lift(rep)
    r = x.lattice_rank
    out = []
    for i in range(r):
        coords = ([Fraction(int(i == k), n) for k in range(r)]
                  + [Fraction(lift[k, i], n) for k in range(r)])
        out.append(TorsionPoint(prod, coords))
    return out


@dataclass(frozen=True)
class TwistedSymplecticModel:
    """The quotient of X x X̂ by the torsion graph subgroup of a
    representative, carried as a superlattice with the rescaled form."""

    base: AbelianVarietyModel
    brauer: BrauerRepresentative
    ambient: SymplecticAV
    basis_change: RatMatrix
    quotient_map: SymplecticMorphism

    def __post_init__(self):
        n = self.brauer.n
        g2 = self.base.lattice_rank
        det = self.basis_change.det()
        if abs(det) * n ** g2 != 1:
            raise ValueError("superlattice index must be n^{2g}")
        if self.quotient_map.multiplier != n:
            raise ValueError("quotient map must have multiplier n")

    @property
    def standard(self) -> SymplecticAV:
        return self.quotient_map.source


def twisted_quotient(x: AbelianVarietyModel,
                     rep: BrauerRepresentative) -> TwistedSymplecticModel:
    """Build the symplectic quotient model attached to (X, representative).

    The quotient by a finite subgroup shows up at lattice level as the
    superlattice generated by Z^{4g} and rational lifts of the subgroup
    generators, put into a canonical integral basis by Hermite reduction.
    The form n * Psi_std rebased to that basis must come out integral and
    unimodular; failure means the graph subgroup was not isotropic.
    """
    if rep.variety != x:
        raise DimensionMismatch("representative lives on a different variety")
    n = rep.n
    std = standard_symplectic(x)
    r2 = std.lattice_rank
    gens = graph_subgroup_generators(rep)
    scaled_cols = [tuple(int(c * n) for c in p.coords) for p in gens]
    stacked = hstack(IntMatrix.identity(r2).scale(n),
                     from_columns(scaled_cols, rows=r2)) if scaled_cols else \
        IntMatrix.identity(r2).scale(n)
    lat = hnf(stacked)
    cols = [lat.column(j) for j in range(r2)]
    c = from_columns(cols, rows=r2)
    if abs(c.det()) != n ** x.lattice_rank:
        raise TheoremViolation("superlattice has the wrong index")
    scaled_form = c.transpose() @ std.form @ c
    rebased = [[None] * r2 for _ in range(r2)]
    for i in range(r2):
        for j in range(r2):
            v = scaled_form[i, j]
            if v % n:
                raise NotIsotropic("rescaled form is not integral; "
                                   "graph subgroup is not isotropic")
            rebased[i][j] = v // n
    form_a = IntMatrix(r2, r2, rebased)
    cq = c.to_rational()
    cq_inv = cq.inverse()
    j_a = cq_inv @ std.J @ cq
    ambient = SymplecticAV(std.N, j_a, form_a)
    proj = cq_inv.scale(n).to_int()
    quotient_map = SymplecticMorphism(std, ambient, proj, n)
    basis_change = cq.scale(Fraction(1, n))
    return TwistedSymplecticModel(x, rep, ambient, basis_change, quotient_map)


def verify_quotient_descent(model: TwistedSymplecticModel) -> bool:
    """The one place the descent relation n*psi_std = π̂ psi_A π is pinned."""
    f = model.quotient_map.matrix
    lhs = model.standard.form.scale(model.brauer.n)
    return f.transpose() @ model.ambient.form @ f == lhs


def embed_dual_lagrangian(model: TwistedSymplecticModel) -> LagrangianSublattice:
    """The image of the dual factor 0 x X̂ inside the quotient lattice.

    The graph subgroup meets the dual factor trivially, so the image lattice
    is already saturated; both facts are verified rather than assumed.
    """
    g2 = model.base.lattice_rank
    f = model.quotient_map.matrix
    cols = [f.column(j) for j in range(g2, 2 * g2)]
    raw = sublattice(cols, ambient_rank=2 * g2)
    sat = saturate(raw)
    if sat != raw:
        raise TheoremViolation("dual factor embedding is not injective")
    return _expect_lagrangian(model.ambient, sat, "dual factor image")


def graph_lagrangian(phi: Homomorphism, m: int,
                     a: SymplecticAV) -> LagrangianSublattice:
    """The scaled graph {(m·phi(ξ), ξ)} as a Lagrangian of the standard model.

    phi must map the dual of the target variety back to it with a symmetric
    matrix; symmetry is exactly isotropy of the graph.
    """
    if m == 0:
        raise ValueError("multiplier must be nonzero")
    if phi.source != dual_av(phi.target):
        raise SourceTargetMismatch("graph map must go from the dual back to the variety")
    if a != standard_symplectic(phi.target):
        raise DimensionMismatch("ambient is not the standard model of the target")
    if phi.matrix.transpose() != phi.matrix:
        raise NotSymmetric("graph map matrix must be symmetric")
    basis = vstack(phi.matrix.scale(m), IntMatrix.identity(phi.matrix.cols))
    lat = Sublattice(a.lattice_rank, basis)
    return _expect_lagrangian(a, lat, "graph sublattice")


def preimage_lagrangian(f: SymplecticMorphism,
                        z: LagrangianSublattice) -> LagrangianSublattice:
    """Neutral component of the preimage of a Lagrangian, as a sublattice."""
    if z.ambient != f.target:
        raise DimensionMismatch("Lagrangian does not live in the morphism target")
    ann = kernel_basis(z.basis.transpose())
    constraint = (ann.transpose() @ f.matrix).to_rational()
    pre = rational_kernel(constraint)
    return _expect_lagrangian(f.source, pre, "preimage of a Lagrangian")


def pushforward_lagrangian(f: SymplecticMorphism,
                           z: LagrangianSublattice) -> LagrangianSublattice:
    """Saturation of the image of a Lagrangian under a symplectic isogeny."""
    if z.ambient != f.source:
        raise DimensionMismatch("Lagrangian does not live in the morphism source")
    image = Sublattice(f.target.lattice_rank, f.matrix @ z.basis)
    return _expect_lagrangian(f.target, saturate(image), "image of a Lagrangian")


def lagrangian_intersection(z: LagrangianSublattice,
                            w: LagrangianSublattice) -> FiniteAbelianGroup:
    """The finite group Z ∩ W; raises InfiniteIntersection on positive rank.

    The intersection points biject with the ambient lattice modulo the sum
    of the two Lagrangian lattices, computed by one Smith reduction.
    """
    if z.ambient != w.ambient:
        raise DimensionMismatch("Lagrangians live in different ambients")
    inter = lattice_intersect(z.lattice, w.lattice)
    if inter.rank > 0:
        raise InfiniteIntersection(inter.rank)
    mixed = hstack(z.basis, -w.basis)
    factors = tuple(d for d in snf(mixed).invariant_factors if d != 1)
    return FiniteAbelianGroup(factors)


def intersection_pairing(z: LagrangianSublattice,
                         w: LagrangianSublattice) -> AlternatingPairing:
    """Canonical nondegenerate alternating pairing on the finite intersection.

    The intersection group of a Lagrangian pair decomposes into squared
    cyclic factors, so its invariant-factor generators split into consecutive
    equal-order pairs; those pairs are matched hyperbolically at value
    1/order. A nondegenerate alternating pairing on a finite abelian group is
    unique up to isomorphism, and the generators here are the deterministic
    Smith generators, so the output is canonical for the pair (Z, W).

    Evaluating the ambient form on one Z-side and one W-side lift does NOT
    work: that value is symmetric mod Z (its antisymmetrization telescopes to
    a form value on two integral vectors), so it can never be the alternating
    pairing; see the repository notes for the worked 2-torsion case.
    """
    group = lagrangian_intersection(z, w)
    dec = square_type_test(group)
    if not dec.is_square_type:
        raise TheoremViolation("intersection of Lagrangians is not square-shaped")
    k = group.rank
    grid = [[Fraction(0)] * k for _ in range(k)]
    for i, m in enumerate(dec.m_list):
        grid[2 * i][2 * i + 1] = Fraction(1, m)
        grid[2 * i + 1][2 * i] = Fraction(-1, m) % 1
    pairing = AlternatingPairing(group, grid)
    if not pairing_is_nondegenerate(pairing):
        raise TheoremViolation("intersection pairing is degenerate")
    return pairing


def lagrangian_isogeny(z: LagrangianSublattice, w: LagrangianSublattice):
    """The quotient-by-Z map restricted to W, with its kernel data.

    Returns (matrix, kernel, decomposition): matrix sends W-coordinates to
    functionals on Z via w ↦ Psi(w, ·); the kernel is its cokernel and must
    decompose into squared cyclic factors.
    """
    intersection = lagrangian_intersection(z, w)
    h = (w.basis.transpose() @ z.ambient.form @ z.basis).transpose()
    kernel = cokernel_group(h)
    if kernel.order() != intersection.order():
        raise TheoremViolation("kernel order differs from the intersection order")
    decomposition = square_type_test(kernel)
    if not decomposition.is_square_type:
        raise TheoremViolation("kernel of the Lagrangian isogeny is not square-shaped")
    return h, kernel, decomposition


def find_transverse_multiplier(zp: LagrangianSublattice, l: Polarization,
                               n: int, m_max: int) -> int:
    """Smallest multiple of n (up to m_max) whose graph misses zp in rank.

    Almost every multiple works, but there is no effective bound, so running
    past m_max is reported as data rather than treated as impossible.
    """
    if n < 1 or m_max < n:
        raise ValueError("need 1 <= n <= m_max")
    base = dual_av(l.variety)
    std = standard_symplectic(base)
    if zp.ambient != std:
        raise DimensionMismatch("Lagrangian does not live in the standard model "
                                "of the polarized configuration")
    gm = graph_map_from_polarization(l)
    eye = IntMatrix.identity(gm.matrix.cols)
    m = n
    while m <= m_max:
        basis = vstack(gm.matrix.scale(m), eye)
        graph = Sublattice(std.lattice_rank, basis)
        if lattice_intersect(zp.lattice, graph).rank == 0:
            return m
        m += n
    raise SearchExhausted(m_max)


def transverse_dual_embedding(model: TwistedSymplecticModel, l: Polarization,
                              m: int):
    """Compose the scaled polarization graph with the quotient projection.

    Gives an injective map of the dual variety into the quotient whose image
    is Lagrangian; injectivity needs the multiplier to kill the torsion
    order, and both facts are checked exactly.
    """
    n = model.brauer.n
    if m % n:
        raise NotDivisible("multiplier must be divisible by the torsion order")
    if l.variety != dual_av(model.base):
        raise DimensionMismatch("polarization must live on the dual of the base")
    gm = graph_map_from_polarization(l)
    lift = _symmetric_torsion_lift(model.brauer)
    eye = IntMatrix.identity(gm.matrix.cols)
    if n > 1:
        obstruction = eye - (gm.matrix.scale(m) @ lift)
        if count_solutions_mod(obstruction, n) != 1:
            raise TheoremViolation("graph embedding meets the torsion graph subgroup")
    graph_basis = vstack(gm.matrix.scale(m), eye)
    iota_matrix = model.quotient_map.matrix @ graph_basis
    iota = Homomorphism(dual_av(model.base), model.ambient.as_variety(),
                        iota_matrix)
    raw = Sublattice(model.ambient.lattice_rank, iota_matrix)
    sat = saturate(raw)
    if sat != raw:
        raise TheoremViolation("dual embedding image is not saturated")
    image = _expect_lagrangian(model.ambient, sat, "transverse dual image")
    return iota, image
