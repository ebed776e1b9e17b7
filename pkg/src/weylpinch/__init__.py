"""Numerical study of the cubic curvature invariant on algebraic Weyl
tensors: subspace bases for the Weyl symmetry constraints, multi-start
maximization of q / |W|^3 on the unit sphere, and a catalog of homogeneous
Einstein spaces with exact curvature invariants."""

from .catalog import (
    CatalogEntry,
    CounterexampleReport,
    S2XS4_BETA_STAR,
    builtin_entries,
    consistency_check,
    construct_and_match,
    einstein_product_riemann,
    fubini_study_riemann,
    product_riemann,
    q_ratio_bound,
    s2xs4_counterexample,
    sharp_bound_ratio,
    space_form_riemann,
    squashed_cp3_weyl,
    summarize,
    table_maxima,
    yamabe_weyl_constant,
)
from .constraints import (
    WeylBasis,
    WeylCoords,
    build_constraints,
    embed,
    is_algebraic_weyl,
    nullspace_basis,
    project,
    weyl_basis,
    weyl_dimension,
)
from .optimize import (
    RunConfig,
    RunResult,
    SearchSummary,
    ascend,
    error_log,
    philox_generator,
    random_unit_coords,
    search,
)
from .qfunc import q_gradient, q_report, q_value, ratio, ratio_gradient
from .tensor import (
    Sym2,
    Tensor4,
    frame_rotate,
    kulkarni_nomizu,
    pad_tensor,
    ricci,
    scalar,
    weyl_from_riemann,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "CounterexampleReport",
    "RunConfig",
    "RunResult",
    "S2XS4_BETA_STAR",
    "SearchSummary",
    "Sym2",
    "Tensor4",
    "WeylBasis",
    "WeylCoords",
    "ascend",
    "build_constraints",
    "builtin_entries",
    "consistency_check",
    "construct_and_match",
    "einstein_product_riemann",
    "embed",
    "error_log",
    "frame_rotate",
    "fubini_study_riemann",
    "is_algebraic_weyl",
    "kulkarni_nomizu",
    "nullspace_basis",
    "pad_tensor",
    "philox_generator",
    "product_riemann",
    "project",
    "q_gradient",
    "q_ratio_bound",
    "q_report",
    "q_value",
    "random_unit_coords",
    "ratio",
    "ratio_gradient",
    "ricci",
    "s2xs4_counterexample",
    "scalar",
    "search",
    "sharp_bound_ratio",
    "space_form_riemann",
    "squashed_cp3_weyl",
    "summarize",
    "table_maxima",
    "weyl_basis",
    "weyl_dimension",
    "weyl_from_riemann",
    "yamabe_weyl_constant",
]
