"""Optimal statistical test plans for multi-component systems.

Given a system's fault-tolerance structure (truth table or cutset list), this
package maximizes the minimum number of tests any minimal cutset receives via
an exact-rational linear program, scales the optimal fractions to integer test
plans for concrete budgets, and reports the conservative upper confidence
bound on system probability of failure on demand.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetTooSmall,
    CutplanError,
    DegenerateStructure,
    InputError,
    InternalInvariantError,
    InvalidAlpha,
    NonCoherentStructure,
    SearchSpaceTooLarge,
    TooManyConstraints,
)
from .oracle import OracleResult, brute_force_plan, enumerate_lp_vertices
from .planner import (
    BoundResult,
    FractionPlan,
    IntegerPlan,
    PathStrategyCheck,
    confidence_bound,
    evaluate_plan,
    find_n_zero,
    integer_plan,
    min_cutset_tests,
    optimize_fractions,
    shortest_path_check,
)
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, LpProblem, LpSolution, solve_lp
from .structure import (
    CutsetMatrix,
    SystemStructure,
    minimal_cutsets,
    minimal_pathsets,
    shortest_path_length,
)

__all__ = [
    "BoundResult",
    "BudgetTooSmall",
    "CutplanError",
    "CutsetMatrix",
    "DegenerateStructure",
    "FractionPlan",
    "INFEASIBLE",
    "InputError",
    "IntegerPlan",
    "InternalInvariantError",
    "InvalidAlpha",
    "LpProblem",
    "LpSolution",
    "NonCoherentStructure",
    "OPTIMAL",
    "OracleResult",
    "PathStrategyCheck",
    "SearchSpaceTooLarge",
    "SystemStructure",
    "TooManyConstraints",
    "UNBOUNDED",
    "brute_force_plan",
    "confidence_bound",
    "enumerate_lp_vertices",
    "evaluate_plan",
    "find_n_zero",
    "integer_plan",
    "min_cutset_tests",
    "minimal_cutsets",
    "minimal_pathsets",
    "optimize_fractions",
    "shortest_path_check",
    "shortest_path_length",
    "solve_lp",
    "__version__",
]
