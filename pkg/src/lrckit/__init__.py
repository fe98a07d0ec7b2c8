"""Workbench for locally recoverable erasure codes over finite fields.

Construct evaluation codes whose symbols sit in small repair groups,
recover erased symbols from r within-group reads, and verify dimension,
locality, minimum distance and Singleton-like optimality with independent
brute-force oracles.
"""

from .construction import (
    CodeInstance,
    CoefficientGrid,
    GroupLayout,
    LrcParams,
    Strategy,
    SubspaceBasis,
    build_instance,
    build_layout,
    build_subspace,
    common_root_count,
    encode,
    evaluate_grid,
    generator_matrix,
    plan_params,
    preset_params,
    random_subspace_search,
)
from .gf import FieldElement, FieldSpec, arith, elements, invert, make_field
from .linalg import Matrix, null_space, rref, solve_interpolation, vandermonde
from .repair import ErasurePattern, RepairTrace, repair_group, repair_position
from .verify import (
    VerificationReport,
    bound_and_defect,
    full_report,
    locality_audit,
    min_distance_bounds,
    min_distance_exact,
    subspace_common_roots_max,
)

__version__ = "0.1.0"

__all__ = [
    "CodeInstance",
    "CoefficientGrid",
    "ErasurePattern",
    "FieldElement",
    "FieldSpec",
    "GroupLayout",
    "LrcParams",
    "Matrix",
    "RepairTrace",
    "Strategy",
    "SubspaceBasis",
    "VerificationReport",
    "arith",
    "bound_and_defect",
    "build_instance",
    "build_layout",
    "build_subspace",
    "common_root_count",
    "elements",
    "encode",
    "evaluate_grid",
    "full_report",
    "generator_matrix",
    "invert",
    "locality_audit",
    "make_field",
    "min_distance_bounds",
    "min_distance_exact",
    "plan_params",
    "preset_params",
    "random_subspace_search",
    "repair_group",
    "repair_position",
    "rref",
    "null_space",
    "solve_interpolation",
    "subspace_common_roots_max",
    "vandermonde",
    "__version__",
]
