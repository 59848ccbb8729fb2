"""Exact integer-lattice models of complex abelian varieties.

The package models abelian varieties as lattices Z^{2g} with rational
complex structures, carries Brauer-class representatives as alternating
pairings on torsion, builds the associated symplectic quotient lattices, and
decides/witnesses the square-kernel isogeny condition through exact integer
linear algebra. No floating point is used anywhere.
"""

from .errors import (AvsymError, DegeneratePairing, DimensionMismatch,
                     InfiniteCokernel, InfiniteIntersection, NotAnIsogeny,
                     NotDivisible, NotIsotropic, NotSymmetric,
                     NotSymplecticIso, ParseError, SearchExhausted,
                     SourceTargetMismatch, TheoremViolation, ValidationError)
from .matrices import IntMatrix, RatMatrix, block_diag, from_columns, hstack, vstack
from .lattices import (SmithDecomposition, Sublattice, hnf, invariant_factors,
                       kernel_basis, lattice_intersect, lattice_member,
                       rational_kernel, saturate, snf, sublattice)
from .groups import (AlternatingPairing, FiniteAbelianGroup,
                     HomogeneousBundleData, SquareDecomposition,
                     cokernel_group, heisenberg_pairing,
                     pairing_is_nondegenerate, square_type_test,
                     symplectic_basis, validate_bundle_data, zero_pairing)
from .varieties import (AbelianVarietyModel, BrauerRepresentative,
                        Homomorphism, Polarization, TorsionPoint, dual_av,
                        dual_hom, graph_map_from_polarization, hom_compose,
                        identity_hom, isogeny_kernel, multiplication_by,
                        ns_difference_test, phi_from_polarization,
                        polarization_map_self_dual, principal_polarization,
                        product_elliptic, product_with_dual, trivial_brauer,
                        validate_brauer_rep)
from .symplectic import (LagrangianSublattice, SymplecticAV,
                         SymplecticMorphism, TwistedSymplecticModel,
                         embed_dual_lagrangian, find_transverse_multiplier,
                         first_factor_lagrangian, graph_lagrangian,
                         graph_subgroup_generators, identity_morphism,
                         intersection_pairing, is_lagrangian,
                         lagrangian_intersection, lagrangian_isogeny,
                         preimage_lagrangian, pushforward_lagrangian,
                         second_factor_lagrangian, standard_symplectic,
                         transverse_dual_embedding, twisted_quotient,
                         verify_quotient_descent)
from .engine import (EquivalenceWitness, InstanceSeed,
                     build_equivalence_witness, fixture_g2_n2,
                     kernel_square_test, random_av_with_brauer,
                     random_symplectic_instance, random_symplectic_unimodular,
                     random_unimodular, swap_isometry)

__version__ = "0.1.0"
