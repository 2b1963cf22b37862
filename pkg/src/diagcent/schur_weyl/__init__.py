"""Tensor-power representations of diagram algebras and commutant computations."""

from diagcent.schur_weyl.commutant import (
    ImageReport,
    OrbitCommutant,
    VerificationError,
    algebra_span,
    centralizer_dimension_in_commutant,
    commutant,
    image_rank_partition,
    lie_algebra_basis,
    lie_commutant,
    normalize_flavor,
    partition_image_report,
)
from diagcent.schur_weyl.exact import ExactMatrix, GaussianRational, SubspaceBasis, nullspace, rank
from diagcent.schur_weyl.maps import (
    FLAVORS,
    TensorIndex,
    brauer_generator_matrices,
    diagonal_action_matrix,
    invert_matrix,
    phi_o_matrix,
    place_permutation_matrix,
    psi_orth_prime_matrix,
    psi_partition_matrix,
)

__all__ = [
    "ImageReport", "OrbitCommutant", "VerificationError", "algebra_span",
    "centralizer_dimension_in_commutant", "commutant", "image_rank_partition",
    "lie_algebra_basis", "lie_commutant", "normalize_flavor", "partition_image_report",
    "ExactMatrix", "GaussianRational", "SubspaceBasis", "nullspace", "rank",
    "FLAVORS", "TensorIndex", "brauer_generator_matrices", "diagonal_action_matrix",
    "invert_matrix", "phi_o_matrix", "place_permutation_matrix", "psi_orth_prime_matrix",
    "psi_partition_matrix",
]
