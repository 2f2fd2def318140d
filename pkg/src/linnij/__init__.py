"""Exact-arithmetic toolkit for linear Nijenhuis operators and LSAs."""

from .exactfield import Scalar, scalar_sqrt, square_free_split
from .polyring import DivisibilityFailure, Poly, exact_divide
from .polymatrix import PolyMatrix, charpoly_sigmas, companion_matrix, jacobian
from .nijenhuis import (
    StructureConstants,
    TorsionTensor,
    change_coordinates,
    direct_sum,
    is_differentially_nondegenerate,
    is_left_symmetric,
    lsa_to_operator,
    operator_is_linear,
    operator_to_lsa,
    random_structure_constants,
    torsion,
)
from .reconstruct import (
    LinearitySystem,
    ReconstructionResult,
    check_solution,
    generate_linearity_system,
    normalize_sigma1,
    normalize_sigma2,
    param_sigmas,
    param_sigmas_2d,
    reconstruct_operator,
    solve_two_dim,
    two_dim_operator,
)
from .catalog import (
    CatalogEntry,
    EntryReport,
    build_catalog,
    generalized_L1,
    generalized_L2,
    generalized_blocks,
    load_catalog,
    save_catalog,
    verify_entry,
)

__all__ = [
    "Scalar",
    "scalar_sqrt",
    "square_free_split",
    "DivisibilityFailure",
    "Poly",
    "exact_divide",
    "PolyMatrix",
    "charpoly_sigmas",
    "companion_matrix",
    "jacobian",
    "StructureConstants",
    "TorsionTensor",
    "change_coordinates",
    "direct_sum",
    "is_differentially_nondegenerate",
    "is_left_symmetric",
    "lsa_to_operator",
    "operator_is_linear",
    "operator_to_lsa",
    "random_structure_constants",
    "torsion",
    "LinearitySystem",
    "ReconstructionResult",
    "check_solution",
    "generate_linearity_system",
    "normalize_sigma1",
    "normalize_sigma2",
    "param_sigmas",
    "param_sigmas_2d",
    "reconstruct_operator",
    "solve_two_dim",
    "two_dim_operator",
    "CatalogEntry",
    "EntryReport",
    "build_catalog",
    "generalized_L1",
    "generalized_L2",
    "generalized_blocks",
    "load_catalog",
    "save_catalog",
    "verify_entry",
]
