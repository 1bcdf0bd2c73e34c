"""Exact construction and verification of isodual and self-dual
quasi-cyclic codes over finite fields."""

from .gf import GF, embedding, field
from .polyring import (CyclotomicCoset, Factorization, Poly,
                       cyclotomic_cosets, factor_xm_minus_1,
                       is_self_reciprocal, minimal_polynomial, poly_gcd,
                       power_substitute_mod, reciprocal, scale_substitute)
from .lincode import (DistanceResult, EquivalenceWitness, LinearCode,
                      equivalence_search, macwilliams_transform)
from .cyclic import (CyclicCode, DuadicSplitting, construct_1, construct_2,
                     construct_3, cyclic_from_linear, duadic_generators,
                     equivalent_witness, find_duadic_splittings,
                     is_isodual_cyclic, isodual_witness,
                     structured_equivalence)
from .qc import (Decomposition, QCCode, QCReport, conjugate_component,
                 count_equivalent_qc, count_qc_cyclic_constituents,
                 crt_structure, decompose, is_isodual_qc, is_quasi_cyclic,
                 is_self_dual_qc, isodual_qc_existence,
                 multiplier_equivalent_qc, phi_forward, phi_inverse, qc_dual,
                 recombine, self_dual_exists)
from .construct import (MatrixProductSpec, VandermondeContext, cubic,
                        isodual_by_cubic, isodual_by_vandermonde,
                        matrix_product, vandermonde, vandermonde_product)

__version__ = "0.1.0"
