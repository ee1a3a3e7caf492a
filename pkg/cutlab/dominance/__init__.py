from cutlab.dominance.constructions import (
    Counterexample,
    build_exp_improv_counterexample,
    build_infeasible_projection_counterexample,
    counterexample_report,
)
from cutlab.dominance.oracle import check_consistency, check_dominance, check_mineff_consistency
from cutlab.dominance.suites import directed_suite, euclidean_suite, mineff_suite, random_polytope

__all__ = [
    "Counterexample",
    "build_exp_improv_counterexample",
    "build_infeasible_projection_counterexample",
    "check_consistency",
    "check_dominance",
    "check_mineff_consistency",
    "counterexample_report",
    "directed_suite",
    "euclidean_suite",
    "mineff_suite",
    "random_polytope",
]
