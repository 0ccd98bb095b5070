"""sparsemult: exact constructions and certification of root multiplicities
for sparse bivariate polynomial systems.

The package builds systems with prescribed local intersection
multiplicities from their Newton supports, verifies every claim with
independent exact arithmetic, and classifies support pairs by the
multiplicities they admit (including the multiplicity-3 decision by mixed
volume).  All computation is over Q; nothing here floats.
"""

__version__ = "0.1.0"

from .errors import (
    ConstructionFailure,
    HypothesisViolation,
    InputError,
    RetryBudgetExhausted,
    VerificationError,
)
from .lattice import (
    INFINITE_INDEX,
    LatticePolygon,
    SupportSet,
    UnimodularAffineMap,
    apply_map,
    area2,
    convex_hull,
    erode,
    erode_set,
    is_segment,
    lattice_points,
    minkowski_sum,
    mixed_volume,
    normal_form,
    pick_counts,
    primitivity_index,
)
from .algebra import (
    LaurentPolynomial,
    MPoly,
    TruncatedSeries,
    UnivariatePolynomial,
    det,
    factor_out_roots,
    kernel_basis,
    rank,
    rational_roots,
    series_int_pow,
    series_inverse,
    series_mul,
    squarefree_part,
    sylvester_resultant,
)
from .branches import (
    BranchParametrization,
    OsculatingData,
    branch_series,
    compute_dim_V,
    is_multiple_of,
    osculating_matrix,
)
from .construct import (
    DEFAULT_SEED,
    ConstructedSystem,
    ImpossibilityCertificate,
    build_gap_family_member,
    build_line_product_system,
    construct_multipoint,
    construct_prescribed,
    construct_univariate,
    gap_family_achievable_set,
    gap_family_phi,
    gap_family_supports,
    line_contact_construct,
)
from .verify import (
    NON_ISOLATED,
    MultiplicityCertificate,
    OracleResult,
    elimination_mult3_oracle,
    intersection_multiplicity_smooth,
    origin_multiplicity_line_product,
    rank_impossibility,
    segment_product_multiplicity,
    univariate_multiplicity,
)
from .classify import (
    Mult3Report,
    TriangleClass,
    decide_mult3,
    enumerate_four_point_bodies,
    hessian_at_one,
    match_exceptional_family,
    triangle_inflection,
)
