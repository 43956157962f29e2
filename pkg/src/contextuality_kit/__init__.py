"""Exact feasibility analysis for moment problems over ±1 variables.

The package decides whether expectation constraints admit a joint
probability distribution (exact rational LP with witnesses and Farkas
certificates), provides the closed-form GHZ/Bell criteria, and
constructs the nonmonotonic upper/lower probability witnesses that
remain consistent when no standard joint distribution exists.
"""

__version__ = "0.1.0"

from .errors import (
    CertificateError,
    EvaluationError,
    ExpressionError,
    KitError,
    MeasureError,
    NoWitnessError,
    ScenarioError,
    SizeLimitError,
    SpaceError,
    UndefinedConditionalError,
)
from .event_space import EventMask, EventSpace, build_space, moment_coefficients, sign_event
from .numerics import (
    DEFAULT_BRACKET_TOLERANCE,
    ScalarInterval,
    evaluate,
    parse_and_evaluate,
    parse_value,
)
from .measures import (
    AtomMeasure,
    ConditionalMomentValue,
    PartialSetFunction,
    ValidationReport,
    check_conjugacy,
    check_monotonicity,
    conditional_expectation,
    expectation,
    signed_atom_sum,
    validate,
)
from .feasibility import (
    FeasibilityOutcome,
    MomentConstraint,
    Scenario,
    ghz_symmetric_scenario,
    make_scenario,
    margin,
    oracle_grid_agreement,
    solve,
    solve_robust,
    uniform_grid,
    verify_certificate,
)
from .closed_form import (
    AssignmentEnumeration,
    BellMoments,
    GhzMoments,
    GhzWitness,
    SymmetricParams,
    SymmetricWitness,
    check_ghz_inequalities,
    check_noise_threshold,
    construct_symmetric_joint,
    ghz_sum,
    mermin_assignment_check,
    solve_bell_conditionals,
    solve_lower_ghz_witness,
    solve_upper_bell_conditionals,
    solve_upper_ghz_witness,
)
from .quantum import (
    build_operator,
    expectation_value,
    ghz_expectations,
    ghz_operators,
    ghz_state_alternate,
    ghz_state_mermin,
    singlet_correlation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
