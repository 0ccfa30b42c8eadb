"""Exact-arithmetic integer programming for few rows and small coefficients."""

from .decomposition import (
    DecompositionWitness,
    assemble_witness,
    detect_unbounded,
    improving_ray,
    solve_standard,
    verify_witness,
)
from .dp import (
    RhsValueTable,
    Solution,
    StandardIP,
    Status,
    build_rhs_table,
    dp_solve,
    papadimitriou_bound,
    small_component_bound,
)
from .errors import (
    GenerationExhausted,
    InstanceFormatError,
    InvariantError,
    NodeLimitExceeded,
    PipelinePreconditionError,
)
from .inequality import (
    AnalysisReport,
    InequalityIP,
    TransformTrace,
    analyze,
    back_map,
    row_count_threshold,
    solve_inequality,
    to_standard_form,
    transformed_entry_bound,
)
from .linalg import (
    DependentColumnsError,
    DimensionError,
    HnfResult,
    IntMatrix,
    SingularMatrixError,
    SubdetReport,
    adjugate,
    det,
    gcd_normalize_row,
    hnf,
    integer_kernel_vector,
    rank,
    solve_unique_integral,
    subdet_scan,
)
from .mixed import BnBResult, MixedIP, branch_and_bound, solve_mixed
from .oracle import (
    GenSpec,
    brute_inequality,
    brute_mixed,
    brute_standard,
    generate,
    vertex_box,
)
from .simplex import RationalLP, SimplexResult, rational_simplex

__version__ = "0.1.0"
