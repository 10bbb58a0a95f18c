"""Workbench for piecewise-linear knot pseudodiagrams.

Exact rational geometry and feasibility throughout: shadows are closed
polygons in general position, resolutions are over/under choices at the
crossings, and realizability in space is decided by an exact phase-one
simplex over vertex heights.  On top of that sit weighted resolution sets,
forcing numbers, and bracket-polynomial classification.
"""

from .analysis import (
    EMPTY_ENTRY,
    ForcingReport,
    MaxForcedReport,
    WeReMode,
    WeReSet,
    core_catalog,
    forces,
    forcing_number,
    max_forced,
    were_set,
)
from .diagram import (
    CrossingAssignment,
    Pseudodiagram,
    Shadow,
    bits_from_resolution,
    gauss_sequence,
    mirror,
    pd_code,
    resolution_from_bits,
    writhe,
)
from .errors import (
    BudgetExceededError,
    DegenerateIntersection,
    GeneralPositionViolation,
    InvalidSetError,
    NoCrossingsError,
    NotInfeasibleError,
    ParseError,
    PartialAssignmentError,
    PlknotsError,
    ValidationError,
)
from .geometry import (
    CrossingGeometry,
    PlanePoint,
    Rational,
    compute_crossings,
    intersect_segments,
    validate_general_position,
)
from .generators import gen_random, gen_star, gen_torus
from .invariants import (
    KnotClass,
    KnotFingerprint,
    LaurentPolynomial,
    classify,
    jones_fingerprint,
    kauffman_bracket,
)
from .realizability import (
    ConstraintSystem,
    FeasibilityResult,
    FeasibilityStatus,
    PropagationOutcome,
    PropagationStatus,
    build_constraints,
    check_feasibility,
    induced_completion,
    is_partial_realizable,
    minimal_infeasible_core,
    propagate_forced,
)
from .shadow_io import read_shadow, write_shadow

__version__ = "0.1.0"
