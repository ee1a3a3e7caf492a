from cutlab.lp.alt_optima import collect_optima
from cutlab.lp.barrier import analytic_center, optimal_face_center
from cutlab.lp.simplex import SimplexState, solve_lp, solve_lp_with_state, tableau_row

__all__ = [
    "SimplexState",
    "analytic_center",
    "collect_optima",
    "optimal_face_center",
    "solve_lp",
    "solve_lp_with_state",
    "tableau_row",
]
