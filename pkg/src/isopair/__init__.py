"""Exact classification of isotropic pairs in presymplectic vector spaces.

The package decomposes an ordered pair of isotropic subspaces into ten
elementary orthogonal summands, refines those into indecomposable blocks of
dimension 1, 2 and 3, and classifies pairs up to presymplectomorphism by a
ten-entry multiplicity vector.  Coisotropic pairs in Poisson vector spaces
are handled through annihilator duality.
"""

from isopair.linalg import (
    DimensionMismatch,
    LinalgError,
    Matrix,
    PreconditionError,
    Scalar,
    Subspace,
    complement_within,
    kernel,
    rref,
)
from isopair.presymplectic import (
    DegenerateRestrictionError,
    LinearMap,
    NotIsotropicError,
    NotSymplecticError,
    PresymplecticSpace,
    ReductionSplit,
    is_isotropic,
    is_lagrangian,
    is_presymplectomorphism,
    orthogonal,
    radical,
    reduction_split,
    symplectic_basis,
)
from isopair.classify import (
    BLOCK_DIMS,
    ElementaryDecomposition,
    IndecomposableBlock,
    InternalInconsistencyError,
    InvariantVector,
    IsotropicPair,
    MultiplicityVector,
    NormalFormWitness,
    VerificationReport,
    alternate_tenth_invariant,
    conjugate_pair,
    elementary_decompose,
    equivalent,
    invariants,
    multiplicities,
    multiplicities_from_invariants,
    multiplicity_matrix,
    multiplicity_matrix_inverse,
    normal_form,
    pair_from_multiplicities,
    random_multiplicities,
    random_pair,
    refine_to_indecomposables,
    verify_decomposition,
)
from isopair.poisson import (
    CoisotropicPair,
    NotCoisotropicError,
    PoissonSpace,
    annihilator,
    classify_coisotropic,
    to_isotropic_pair,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
