"""Exact certification of the characteristic-0 vs characteristic-p rank gap
of the intersection form attached to a family of Schubert-variety slices.

The library builds the truncated cohomology ring of a product of projective
spaces, the Euler class of the resolution bundle, the full and collapsed
intersection-form matrices, and the combinatorial data (permutations, slice
equations) of the underlying variety.  All arithmetic is exact.
"""

from .exact import (
    CoefficientField,
    LabeledMatrix,
    RATIONALS,
    Scalar,
    UniPoly,
    binom,
    is_prime,
    left_kernel,
    poly_divrem,
    prime_field,
    rank,
)
from .truncring import (
    RingSpec,
    TruncatedPoly,
    inverse_unit,
    make_ring,
    monomial_basis,
    multiply,
    top_integral,
)
from .chern import (
    BundleSpec,
    cohomology_ring,
    euler_factors,
    quotient_dual_chern,
    resolution_euler_class,
    split_bundle,
    splitting_oracle,
    twist_euler,
)
from .pairing import (
    ClassConstancyError,
    PerversityReport,
    SliceParams,
    Verdict,
    derive_dims,
    multiplicity,
    pairing_matrix,
    perversity_report,
    reduce_by_w,
    stratum_matrix,
)
from .bandmatrix import (
    LemmaRecord,
    binomial_band_matrix,
    dependence_search,
    kernel_witness,
    row_polynomials,
    verify_rank_lemma,
)
from .perms import (
    MembershipResult,
    PermutationWord,
    SlicePoint,
    antidiagonal,
    block_antidiagonal_permutation,
    bruhat_leq,
    coxeter_length,
    schubert_permutation,
    slice_membership,
)

__version__ = "0.1.0"
