"""Exact revenue-optimal item pricing for a unit-demand buyer with independent discrete values."""

from .cells import (
    CellDescription,
    CellOptimum,
    Constraint,
    ConstraintGraph,
    Relation,
    build_constraint_graph,
    cell_of,
    cell_optimum,
    check_feasible,
    verify_certificate,
)
from .exact import (
    grid_solve,
    restricted_solve,
)
from .model import (
    EpsAffine,
    PricingInstance,
    Rational,
    ValueDistribution,
    scale_to_integer,
    validate_instance,
)
from .revenue import (
    TieBreakRule,
    buyer_choice,
    expected_revenue,
    expected_revenue_naive,
    win_probabilities,
)
from .support2 import (
    Support2Instance,
    enumerate_candidates,
    is_nondegenerate,
    perturb_instance,
    solve_nondegenerate,
    solve_support2,
    support2_instance,
)

__version__ = "0.1.0"

__all__ = [
    "build_constraint_graph",
    "buyer_choice",
    "cell_of",
    "cell_optimum",
    "CellDescription",
    "CellOptimum",
    "check_feasible",
    "Constraint",
    "ConstraintGraph",
    "enumerate_candidates",
    "EpsAffine",
    "expected_revenue",
    "expected_revenue_naive",
    "grid_solve",
    "is_nondegenerate",
    "perturb_instance",
    "PricingInstance",
    "Rational",
    "Relation",
    "restricted_solve",
    "scale_to_integer",
    "solve_nondegenerate",
    "solve_support2",
    "support2_instance",
    "Support2Instance",
    "TieBreakRule",
    "validate_instance",
    "ValueDistribution",
    "verify_certificate",
    "win_probabilities",
]
