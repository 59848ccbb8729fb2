"""Decision layer: square-kernel tests for isogenies and the end-to-end
witness pipeline, plus seeded generators for the property suites.

Every generator is driven by an explicit 64-bit seed through its own
``random.Random`` instance, so identical seeds reproduce identical objects.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (InfiniteIntersection, NotAnIsogeny, NotSymplecticIso,
                     TheoremViolation)
from .groups import FiniteAbelianGroup, SquareDecomposition, square_type_test
from .lattices import Sublattice, solve_integer
from .matrices import IntMatrix, block_diag, from_columns, hstack, vstack
from .symplectic import (LagrangianSublattice, SymplecticAV, SymplecticMorphism,
                         embed_dual_lagrangian, find_transverse_multiplier,
                         first_factor_lagrangian, lagrangian_isogeny,
                         preimage_lagrangian, pushforward_lagrangian,
                         second_factor_lagrangian, standard_symplectic,
                         transverse_dual_embedding, twisted_quotient)
from .varieties import (AbelianVarietyModel, BrauerRepresentative, Homomorphism,
                        Polarization, dual_av, isogeny_kernel,
                        principal_polarization, product_elliptic,
                        symmetric_map_basis)


def kernel_square_test(f: Homomorphism):
    """(verdict, decomposition, kernel) for the square-kernel condition."""
    if not f.is_isogeny():
        raise NotAnIsogeny("kernel test needs a finite-kernel map")
    kernel = isogeny_kernel(f)
    decomposition = square_type_test(kernel)
    return decomposition.is_square_type, decomposition, kernel


@dataclass(frozen=True)
class EquivalenceWitness:
    """An isogeny from the dual of X to Y with verified square kernel."""

    isogeny: Homomorphism
    kernel: FiniteAbelianGroup
    decomposition: SquareDecomposition
    provenance: dict = field(compare=False)

    def __post_init__(self):
        if not self.decomposition.is_square_type:
            raise ValueError("witness kernel must be square-shaped")
        if isogeny_kernel(self.isogeny) != self.kernel:
            raise ValueError("kernel does not match the isogeny")


def build_equivalence_witness(xm: AbelianVarietyModel, a: BrauerRepresentative,
                              ym: AbelianVarietyModel, b: BrauerRepresentative,
                              g_iso: SymplecticMorphism, l: Polarization,
                              m_max: int | None = None) -> EquivalenceWitness:
    """Manufacture a square-kernel isogeny X̂ -> Y from an isometry of the
    twisted quotients.

    Steps: carry the dual-factor Lagrangian of the X side across g_iso, pull
    it back to the standard model of the Y side, pick a transverse graph
    multiplier there, re-embed the dual of Y transversally, and read the
    witness off the pairing between the two Lagrangians.
    """
    model_x = twisted_quotient(xm, a)
    model_y = twisted_quotient(ym, b)
    if g_iso.source != model_x.ambient or g_iso.target != model_y.ambient:
        raise NotSymplecticIso("isometry endpoints do not match the built models")
    if not g_iso.is_isomorphism():
        raise NotSymplecticIso("map is not a unimodular multiplier-1 isometry")
    n_y = b.n
    if m_max is None:
        m_max = 50 * n_y

    z0 = embed_dual_lagrangian(model_x)
    z = pushforward_lagrangian(g_iso, z0)
    z_pre = preimage_lagrangian(model_y.quotient_map, z)
    m = find_transverse_multiplier(z_pre, l, n_y, m_max)
    iota, w = transverse_dual_embedding(model_y, l, m)
    try:
        _, kernel, decomposition = lagrangian_isogeny(z, w)
    except InfiniteIntersection as exc:
        raise TheoremViolation(
            "transverse search succeeded upstream but the carried Lagrangians "
            "still meet in positive rank") from exc

    # Witness assembly: X̂ -> Z (g_iso after the dual-factor embedding),
    # Z -> Ŵ (pair against the W basis), Ŵ -> Y (transpose of the lattice
    # identification of Ŷ with W carried by iota).
    gx2 = xm.lattice_rank
    fx = model_x.quotient_map.matrix
    into_z = []
    for jcol in range(gx2, 2 * gx2):
        vec = g_iso.matrix.mul_vector(fx.column(jcol))
        coords = solve_integer(z.basis, vec)
        if coords is None:
            raise TheoremViolation("dual factor image escaped its Lagrangian")
        into_z.append(coords)
    u = from_columns(into_z, rows=z.basis.cols)
    pair_matrix = (z.basis.transpose() @ model_y.ambient.form @ w.basis)
    # Column j of the middle factor is Psi(z_j, w_i) over i.
    middle = pair_matrix.transpose()

    ident_cols = []
    for j in range(w.basis.cols):
        coords = solve_integer(w.basis, iota.matrix.column(j))
        if coords is None:
            raise TheoremViolation("dual embedding escaped its Lagrangian")
        ident_cols.append(coords)
    t = from_columns(ident_cols, rows=w.basis.cols)
    if abs(t.det()) != 1:
        raise TheoremViolation("dual identification is not unimodular")

    witness_matrix = t.transpose() @ middle @ u
    witness = Homomorphism(dual_av(xm), ym, witness_matrix)
    ok, wit_dec, wit_kernel = kernel_square_test(witness)
    if not ok or wit_kernel != kernel:
        raise TheoremViolation("assembled witness kernel disagrees with the pairing")
    provenance = {
        "m": m,
        "multiplier_bound": m_max,
        "z_basis": z.basis,
        "w_basis": w.basis,
        "kernel": kernel.invariant_factors,
    }
    return EquivalenceWitness(witness, wit_kernel, wit_dec, provenance)


@dataclass(frozen=True)
class InstanceSeed:
    """Deterministic instance parameters for the random generators."""

    seed: int
    g: int = 2
    n: int = 2
    bound: int = 3

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if self.g < 1 or self.n < 1 or self.bound < 1:
            raise ValueError("size parameters must be positive")

    def rng(self):
        return random.Random(self.seed)


def random_unimodular(rng, size, steps=None, bound=2) -> IntMatrix:
    """Product of elementary row operations applied to the identity."""
    steps = steps if steps is not None else 3 * size
    m = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(steps):
        op = rng.randrange(3)
        i = rng.randrange(size)
        j = rng.randrange(size)
        if op == 0 and i != j:
            q = rng.randint(-bound, bound)
            m[i] = [x + q * y for x, y in zip(m[i], m[j])]
        elif op == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        elif op == 2:
            m[i] = [-x for x in m[i]]
    return IntMatrix.from_rows(m)


def random_symplectic_unimodular(rng, half, steps=None, bound=1) -> IntMatrix:
    """Random element of Sp(2*half, Z) for the standard block form.

    Built from block generators: diag(A, A^{-T}) for unimodular A, shears by
    symmetric blocks on either side, and the block flip. No complex
    compatibility is imposed; use random_complex_symplectic where the
    Lagrangians must stay complex subtori.
    """
    steps = steps if steps is not None else 4
    n = 2 * half
    eye = IntMatrix.identity(half)
    zero = IntMatrix.zeros(half, half)
    flip = vstack(hstack(zero, eye), hstack(-eye, zero))
    out = IntMatrix.identity(n)
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 0:
            a = random_unimodular(rng, half, bound=bound)
            ainvt = a.to_rational().inverse().to_int().transpose()
            gen = block_diag(a, ainvt)
        elif kind == 1:
            s = _random_symmetric(rng, half, bound)
            if rng.randrange(2):
                gen = vstack(hstack(eye, s), hstack(zero, eye))
            else:
                gen = vstack(hstack(eye, zero), hstack(s, eye))
        else:
            gen = flip
        out = out @ gen
    return out


def _random_symmetric(rng, size, bound) -> IntMatrix:
    grid = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            v = rng.randint(-bound, bound)
            grid[i][j] = v
            grid[j][i] = v
    return IntMatrix.from_rows(grid)


def _random_gaussian_unimodular(rng, g, steps=None, bound=1) -> IntMatrix:
    """Unimodular 2g x 2g matrix commuting with the product-elliptic J.

    Entries are g x g Gaussian integers expanded into 2x2 blocks
    [[x, -y], [y, x]]; elementary operations over Z[i] keep the expanded
    determinant equal to one.
    """
    steps = steps if steps is not None else 3 * g
    m = [[(int(i == j), 0) for j in range(g)] for i in range(g)]

    def cadd(a, b):
        return (a[0] + b[0], a[1] + b[1])

    def cmul(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    units = [(-1, 0), (0, 1), (0, -1)]
    for _ in range(steps):
        op = rng.randrange(3)
        i = rng.randrange(g)
        j = rng.randrange(g)
        if op == 0 and i != j:
            q = (rng.randint(-bound, bound), rng.randint(-bound, bound))
            m[i] = [cadd(x, cmul(q, y)) for x, y in zip(m[i], m[j])]
        elif op == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        elif op == 2:
            u = units[rng.randrange(3)]
            m[i] = [cmul(u, x) for x in m[i]]
    grid = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        for j in range(g):
            x, y = m[i][j]
            grid[2 * i][2 * j] = x
            grid[2 * i][2 * j + 1] = -y
            grid[2 * i + 1][2 * j] = y
            grid[2 * i + 1][2 * j + 1] = x
    return IntMatrix.from_rows(grid)


def _random_symmetric_linear(rng, basis: IntMatrix, size, bound,
                             invertible=True) -> IntMatrix:
    """Random integer combination of a vectorized-matrix basis."""
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(basis.cols)]
        vec = [sum(c * basis[r, j] for j, c in enumerate(coeffs))
               for r in range(basis.rows)]
        mat = IntMatrix(size, size, [vec[i * size:(i + 1) * size]
                                     for i in range(size)])
        if not invertible or mat.det() != 0:
            return mat


def random_complex_symplectic(rng, x: AbelianVarietyModel,
                              steps=None, bound=1) -> IntMatrix:
    """Random complex-linear integral isometry of the standard model of
    X x X̂ for a product-elliptic X."""
    steps = steps if steps is not None else 4
    g2 = x.lattice_rank
    sym_basis = symmetric_map_basis(x)
    eye = IntMatrix.identity(g2)
    zero = IntMatrix.zeros(g2, g2)
    flip = vstack(hstack(zero, eye), hstack(-eye, zero))
    out = IntMatrix.identity(2 * g2)
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 0:
            a = _random_gaussian_unimodular(rng, x.g, bound=bound)
            ainvt = a.to_rational().inverse().to_int().transpose()
            gen = block_diag(a, ainvt)
        elif kind == 1:
            s = _random_symmetric_linear(rng, sym_basis, g2, bound,
                                         invertible=False)
            if rng.randrange(2):
                gen = vstack(hstack(eye, s), hstack(zero, eye))
            else:
                gen = vstack(hstack(eye, zero), hstack(s, eye))
        else:
            gen = flip
        out = out @ gen
    return out


def random_symplectic_instance(s: InstanceSeed):
    """A symplectic lattice with a pair of complex Lagrangian sublattices.

    The ambient is the standard model of X x X̂ for the g-fold square
    elliptic product (half rank N = 2g). One Lagrangian is the dual factor;
    the other is either the base factor or the graph of a scaled random
    symmetric complex-linear matrix, which forces a finite intersection of
    shape (Z/k)^N for scaled-identity shears. Everything is then moved by a
    random complex-linear integral isometry.

    Complex linearity of the shear matters: the squared-factor kernel shape
    is a theorem about abelian subvarieties, and plain symmetric integer
    shears (graphs that are not complex subtori) genuinely violate it.
    """
    rng = s.rng()
    x = product_elliptic(s.g)
    ambient = standard_symplectic(x)
    g2 = x.lattice_rank

    z = second_factor_lagrangian(ambient)
    shear = rng.randrange(0, s.bound + 1)
    if shear == 0:
        w = first_factor_lagrangian(ambient)
    else:
        if rng.randrange(3) == 0:
            sym = IntMatrix.identity(g2)
        else:
            sym = _random_symmetric_linear(rng, symmetric_map_basis(x), g2,
                                           s.bound)
        basis = vstack(sym.scale(shear), IntMatrix.identity(g2))
        w = LagrangianSublattice(ambient, Sublattice(2 * g2, basis))

    q = random_complex_symplectic(rng, x)
    z2 = LagrangianSublattice(ambient, Sublattice(2 * g2, q @ z.basis))
    w2 = LagrangianSublattice(ambient, Sublattice(2 * g2, q @ w.basis))
    return ambient, z2, w2


def random_av_with_brauer(s: InstanceSeed):
    """A conjugated product-elliptic model with a random representative and a
    transported dual-side polarization."""
    rng = s.rng()
    g = s.g
    n = s.n
    base = product_elliptic(g)
    c = random_unimodular(rng, 2 * g, bound=1)
    cq = c.to_rational()
    cq_inv = cq.inverse()
    model = AbelianVarietyModel(g, cq_inv @ base.J @ cq)

    r = 2 * g
    grid = [[0] * r for _ in range(r)]
    if n > 1:
        for i in range(r):
            for k in range(i + 1, r):
                v = rng.randrange(n)
                grid[i][k] = v
                grid[k][i] = (-v) % n
    rep = BrauerRepresentative(model, n, IntMatrix.from_rows(grid))

    dual_std = principal_polarization(dual_av(base))
    weights = block_diag(*[IntMatrix.identity(2).scale(rng.randint(1, s.bound))
                           for _ in range(g)])
    e_std = weights @ dual_std.form
    e_new = (cq_inv @ e_std @ cq_inv.transpose()).to_int()
    pol = Polarization(dual_av(model), e_new)
    return model, rep, pol


def fixture_g2_n2():
    """The pinned order-2 surface-level fixture used by the documentation,
    the golden CLI files, and the worked examples."""
    x = product_elliptic(2)
    pairing = IntMatrix.from_rows([
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ])
    rep = BrauerRepresentative(x, 2, pairing)
    pol = principal_polarization(dual_av(x))
    return x, rep, pol


def swap_isometry(x: AbelianVarietyModel) -> SymplecticMorphism:
    """(p, q) ↦ (q, -p) from the standard model of X to that of its dual."""
    std_x = standard_symplectic(x)
    std_y = standard_symplectic(dual_av(x))
    n = x.lattice_rank
    eye = IntMatrix.identity(n)
    zero = IntMatrix.zeros(n, n)
    f = vstack(hstack(zero, eye), hstack(-eye, zero))
    return SymplecticMorphism(std_x, std_y, f, 1)
