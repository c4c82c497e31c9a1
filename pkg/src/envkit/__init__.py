"""Envelope functions for averaged iterations of composed operators.

The library builds smooth envelopes whose stationary points coincide with
the fixed points of a composition ``S2 S1`` of nonexpansive gradient
operators with affine ``S1``.  Named constructions cover proximal
smoothing, proximal-gradient and reflection compositions, the dual
reflection composition, and relaxed alternating projections.  Quadratic
curvature operators bracket every envelope, solvers run on top, and a
randomized verification harness certifies the theory numerically.
"""

from .envelopes import (
    ADMMSpec,
    BoundPair,
    DRSpec,
    Envelope,
    EnvelopeSpec,
    FBSpec,
    GAPSpec,
    GeneralSpec,
    MoreauSpec,
    Potential,
    build,
    gap_bound_eigenvalues,
    general_envelope_value_nonaffine,
)
from .errors import (
    DimensionMismatchError,
    EigendecompositionError,
    EnvkitError,
    InstanceFormatError,
    ParameterError,
    RankDeficientError,
    SingularOperatorError,
)
from .linalg import (
    AffineMap,
    AffineSet,
    QuadraticFn,
    SymOperator,
    affine_projector,
    largest_mapped_eigenvalue,
    poly_of_operator,
    quadratic_conjugate,
    smallest_mapped_eigenvalue,
    sym_eig,
)
from .operators import (
    AveragedParams,
    IndicatorAffine,
    IndicatorBox,
    IndicatorHalfspace,
    L1,
    ProxFn,
    Quadratic,
    RelaxedProx,
    Zero,
    classify_gradient_operator,
    gradient_step_map,
    prox,
    reflected_prox_map_quadratic,
    reg_conjugate_value,
    relaxed_prox_apply,
    relaxed_prox_potential,
)
from .solvers import (
    SolverConfig,
    Trace,
    averaged_iteration,
    gradient_descent,
    scaled_gradient_iteration,
    solution_extract,
)
from .verify import CheckReport, run_checks

__version__ = "0.1.0"

__all__ = [
    "ADMMSpec",
    "AffineMap",
    "AffineSet",
    "AveragedParams",
    "BoundPair",
    "CheckReport",
    "DRSpec",
    "DimensionMismatchError",
    "EigendecompositionError",
    "Envelope",
    "EnvelopeSpec",
    "EnvkitError",
    "FBSpec",
    "GAPSpec",
    "GeneralSpec",
    "IndicatorAffine",
    "IndicatorBox",
    "IndicatorHalfspace",
    "InstanceFormatError",
    "L1",
    "MoreauSpec",
    "ParameterError",
    "Potential",
    "ProxFn",
    "Quadratic",
    "QuadraticFn",
    "RankDeficientError",
    "RelaxedProx",
    "SingularOperatorError",
    "SolverConfig",
    "SymOperator",
    "Trace",
    "Zero",
    "affine_projector",
    "averaged_iteration",
    "build",
    "classify_gradient_operator",
    "gap_bound_eigenvalues",
    "general_envelope_value_nonaffine",
    "gradient_descent",
    "gradient_step_map",
    "largest_mapped_eigenvalue",
    "poly_of_operator",
    "prox",
    "quadratic_conjugate",
    "reflected_prox_map_quadratic",
    "reg_conjugate_value",
    "relaxed_prox_apply",
    "relaxed_prox_potential",
    "run_checks",
    "scaled_gradient_iteration",
    "smallest_mapped_eigenvalue",
    "solution_extract",
    "sym_eig",
]
