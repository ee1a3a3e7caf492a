"""LP-based dominance oracle and dominance-consistency checks.

Reading adopted for dominance: cut A dominates cut B on a polytope P iff every
point of P cut by B is also cut by A, and some point of P is cut by A but not
by B. Read literally, the phrase "all points cut by A are cut by B and some
point is cut by A but not by B" contradicts itself; the reading above is the
one under which the consistency results hold.

"Cut by" means a normalised violation above ``feas_tol``.
"""

import logging
from itertools import permutations
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.errors import RegionEmptyError
from cutlab.lp.auxiliary import solve_aux_lp
from cutlab.measures import projection_is_feasible, score, score_eff, score_mineff
from cutlab.types.dominance import (
    ConsistencyReport,
    ConsistencyViolation,
    DominanceRelation,
    DominanceVerdict,
)
from cutlab.types.instance import Cut, MipInstance
from cutlab.types.measures import MeasureKind, ScoringContext
from cutlab.types.solution import LpStatus, OptimaSet

logger = logging.getLogger(__name__)

# strict score gap for a pair to count as ranked
SCORE_MARGIN = 1e-7
# efficacies this close to the minimum make a solution active
ACTIVE_TOL = 1e-9

Measure = Union[MeasureKind, Callable[[Cut], float]]


def _polytope(inst: MipInstance, cuts_in_lp: Sequence[Cut]) -> Tuple[np.ndarray, np.ndarray]:
    rows = np.array([cut.coeffs for cut in cuts_in_lp]).reshape(-1, inst.n)
    return inst.inequality_form(rows, np.array([cut.rhs for cut in cuts_in_lp]))


def _max_violation_where_kept(G, h, target: Cut, keeper: Cut) -> Tuple[float, Optional[np.ndarray]]:
    """max normalised violation of ``target`` over {x in P : keeper.x <= rhs}."""
    A = np.vstack([G, keeper.coeffs[None, :]])
    b = np.concatenate([h, [keeper.rhs]])
    res = solve_aux_lp(-target.coeffs / target.norm, A, b)
    if res.status == LpStatus.INFEASIBLE:
        return -np.inf, None
    if res.status == LpStatus.UNBOUNDED:
        return np.inf, None
    return float(-res.value - target.rhs / target.norm), res.x


def check_dominance(
    inst: MipInstance,
    cuts_in_lp: Sequence[Cut],
    cut_a: Cut,
    cut_b: Cut,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DominanceVerdict:
    """Classify two cuts over the LP polytope (instance rows, ``cuts_in_lp``, bounds).

    Raises:
        RegionEmptyError: the polytope is empty.
    """
    G, h = _polytope(inst, cuts_in_lp)
    if solve_aux_lp(np.zeros(inst.n), G, h).status == LpStatus.INFEASIBLE:
        raise RegionEmptyError("dominance checked on an empty polytope")

    a_only, witness_a = _max_violation_where_kept(G, h, cut_a, cut_b)
    b_only, witness_b = _max_violation_where_kept(G, h, cut_b, cut_a)
    a_cuts_more = a_only > tol.feas_tol
    b_cuts_more = b_only > tol.feas_tol
    if a_cuts_more and b_cuts_more:
        relation = DominanceRelation.INCOMPARABLE
    elif a_cuts_more:
        relation = DominanceRelation.A_DOMINATES_B
    elif b_cuts_more:
        relation = DominanceRelation.B_DOMINATES_A
    else:
        relation = DominanceRelation.EQUIVALENT
    return DominanceVerdict(
        relation=relation,
        a_only=a_only,
        b_only=b_only,
        witness_a=witness_a if a_cuts_more else None,
        witness_b=witness_b if b_cuts_more else None,
    )


def _scorer(measure: Measure, ctx: Optional[ScoringContext], tol: Tolerances) -> Tuple[str, Callable[[Cut], float]]:
    if isinstance(measure, MeasureKind):
        if ctx is None:
            raise ValueError(f"measure '{measure.value}' needs a scoring context")
        return measure.value, lambda cut: score(measure, cut, ctx, tol)
    return getattr(measure, "__name__", "custom"), measure


def check_consistency(
    inst: MipInstance,
    cuts_in_lp: Sequence[Cut],
    cut_set: Sequence[Cut],
    measure: Measure,
    ctx: Optional[ScoringContext] = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ConsistencyReport:
    """Report every pair where the strictly higher-scored cut is dominated."""
    name, fn = _scorer(measure, ctx, tol)
    scores = [fn(cut) for cut in cut_set]
    violations: List[ConsistencyViolation] = []
    checked = 0
    for i, j in permutations(range(len(cut_set)), 2):
        if not scores[i] > scores[j] + SCORE_MARGIN:
            continue
        checked += 1
        verdict = check_dominance(inst, cuts_in_lp, cut_set[i], cut_set[j], tol)
        if verdict.relation == DominanceRelation.B_DOMINATES_A:
            logger.debug(f"{name}: cut {i} ({scores[i]:.4g}) dominated by cut {j} ({scores[j]:.4g})")
            violations.append(ConsistencyViolation(
                higher=i, lower=j, higher_score=scores[i], lower_score=scores[j], verdict=verdict,
            ))
    return ConsistencyReport(measure=name, pairs_checked=checked, violations=violations)


def active_solutions(cut: Cut, optima: OptimaSet) -> List[int]:
    effs = [score_eff(cut, point) for point in optima.points]
    low = min(effs)
    return [k for k, value in enumerate(effs) if value <= low + ACTIVE_TOL]


def mineff_hypothesis(
    inst: MipInstance, cuts_in_lp: Sequence[Cut], cut: Cut, optima: OptimaSet, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Some active solution is separated by ``cut`` and projects LP-feasibly onto it."""
    for k in active_solutions(cut, optima):
        point = optima.points[k]
        if score_eff(cut, point) > tol.feas_tol and projection_is_feasible(inst, cuts_in_lp, cut, point, tol):
            return True
    return False


def check_mineff_consistency(
    inst: MipInstance,
    cuts_in_lp: Sequence[Cut],
    cut_set: Sequence[Cut],
    optima: OptimaSet,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ConsistencyReport:
    """Check mineff on the pairs whose lower-scored cut meets the active-solution hypothesis.

    Pairs failing the hypothesis are listed in ``pairs_excluded`` and not checked.
    """
    scores = [score_mineff(cut, optima) for cut in cut_set]
    excluded: List[Tuple[int, int]] = []
    violations: List[ConsistencyViolation] = []
    checked = 0
    for i, j in permutations(range(len(cut_set)), 2):
        if not scores[i] > scores[j] + SCORE_MARGIN:
            continue
        if not mineff_hypothesis(inst, cuts_in_lp, cut_set[j], optima, tol):
            excluded.append((i, j))
            continue
        checked += 1
        verdict = check_dominance(inst, cuts_in_lp, cut_set[i], cut_set[j], tol)
        if verdict.relation == DominanceRelation.B_DOMINATES_A:
            violations.append(ConsistencyViolation(
                higher=i, lower=j, higher_score=scores[i], lower_score=scores[j], verdict=verdict,
            ))
    if excluded:
        logger.info(f"mineff: {len(excluded)} pairs excluded, hypothesis not met")
    return ConsistencyReport(
        measure=MeasureKind.MINEFF.value, pairs_checked=checked, pairs_excluded=excluded, violations=violations,
    )
