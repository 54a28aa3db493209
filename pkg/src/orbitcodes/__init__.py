"""Cyclic orbit subspace codes over prime fields.

Constant-dimension codes arising as orbits of a cyclic matrix group on the
Grassmannian: construction (including spreads), classification, cardinality
and distance analysis, minimum-distance decoding, channel simulation, and
seeded random search.
"""

from .analysis import (
    BoundsReport,
    CodeParams,
    CyclicOrbitCode,
    analyze,
    analyze_naive,
    block_bounds,
    code_from_json_dict,
    code_to_json_dict,
    codeword,
    distance_distribution,
    dual_code,
    enumerate_orbit,
    general_code,
    macwilliams_check,
    make_code,
)
from .canonical import (
    ElementaryDivisorSpec,
    MatrixType,
    build_generator,
    char_poly,
    factor_poly,
    matrix_type,
    same_group_type,
)
from .decoder import (
    DecodeResult,
    decode_exhaustive,
    decode_lf,
    error_capability,
    lf_set,
    lf_vector_count,
)
from .errors import (
    DomainError,
    InternalInvariantError,
    NonUnitError,
    NoSuchPolynomialError,
    OrbitCapError,
    ShapeMismatchError,
    SingularMatrixError,
)
from .fields import (
    FieldCtx,
    Poly,
    PrimeField,
    RingElem,
    dlog,
    field_context,
    find_irreducible_with_order,
    is_irreducible,
    is_primitive,
    least_primitive,
    phi,
    phi_inv,
    poly_order,
)
from .harness import (
    ChannelConfig,
    SearchReport,
    SimulationStats,
    random_search,
    simulate_decoding,
    transmit,
)
from .linalg import (
    Mat,
    Subspace,
    companion_matrix,
    dual,
    intersection_dim,
    matrix_order,
    psi,
    psi_inv,
    subspace_distance,
    subspace_sum,
)
from .spread import (
    SpreadSpec,
    build_nonprimitive_spread,
    build_spread,
    distinct_orbit_start,
    spread_start_rows,
    verify_spread,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "ChannelConfig",
    "CodeParams",
    "CyclicOrbitCode",
    "DecodeResult",
    "DomainError",
    "ElementaryDivisorSpec",
    "FieldCtx",
    "InternalInvariantError",
    "Mat",
    "MatrixType",
    "NoSuchPolynomialError",
    "NonUnitError",
    "OrbitCapError",
    "Poly",
    "PrimeField",
    "RingElem",
    "SearchReport",
    "ShapeMismatchError",
    "SimulationStats",
    "SingularMatrixError",
    "SpreadSpec",
    "Subspace",
    "analyze",
    "analyze_naive",
    "block_bounds",
    "build_generator",
    "build_nonprimitive_spread",
    "build_spread",
    "char_poly",
    "code_from_json_dict",
    "code_to_json_dict",
    "codeword",
    "companion_matrix",
    "decode_exhaustive",
    "decode_lf",
    "distance_distribution",
    "distinct_orbit_start",
    "dlog",
    "dual",
    "dual_code",
    "enumerate_orbit",
    "error_capability",
    "factor_poly",
    "field_context",
    "find_irreducible_with_order",
    "general_code",
    "intersection_dim",
    "is_irreducible",
    "is_primitive",
    "least_primitive",
    "lf_set",
    "lf_vector_count",
    "macwilliams_check",
    "make_code",
    "matrix_order",
    "matrix_type",
    "phi",
    "phi_inv",
    "poly_order",
    "psi",
    "psi_inv",
    "random_search",
    "same_group_type",
    "simulate_decoding",
    "spread_start_rows",
    "subspace_distance",
    "subspace_sum",
    "transmit",
    "verify_spread",
]
