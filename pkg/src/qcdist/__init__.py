"""Minimum-distance upper bounds, QC lifting, and girth tools for
punctured quasi-cyclic LDPC codes."""

from .bounds import (
    BoundReport,
    bound_best,
    bound_poly,
    bound_poly_rowremoval,
    bound_weight,
    bound_weight_rowremoval,
    estimate_cost,
    min_star,
)
from .codeword import (
    PUNCTURED,
    QcCodeword,
    build_codeword,
    build_punctured_codeword,
    build_rowremoved_codeword,
    verify,
    violated_rows,
)
from .errors import (
    CancellationError,
    CapacityError,
    ConformanceError,
    DomainError,
    ModulusMismatchError,
    ParseError,
    PreconditionError,
    QcError,
    ShapeError,
)
from .expansion import (
    ShiftAssignment,
    expand,
    expand_puncture,
    expand_two_step,
    random_shift_assignment,
    to_binary,
)
from .girth import TannerGraph, measure_girth, qc_girth_limit, tree_girth_bound
from .oracle import dimensionality_preserved, exact_min_distance
from .poly_ring import PolyResidue, RingClass
from .qc_matrix import (
    PolyMatrix,
    WeightMatrix,
    dependent_row_witness,
    drop,
    index_set,
    is_invertible,
    perm_int,
    perm_ring,
    weight_matrix,
)

__version__ = "0.1.0"
