"""Seeded random checks of the dominance-consistency guarantees.

Each trial draws a small polytope (a box [0,10]^d, d in 2..4, cut by 3 to 8
half-spaces that all keep one anchor point strictly inside), a reference
configuration, and a handful of cuts built so the guarantee's hypothesis
holds. A consistent measure reports zero violations.
"""

import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.errors import LpInfeasibleError, NoConvergenceError, RegionEmptyError
from cutlab.lp.alt_optima import collect_optima
from cutlab.lp.barrier import analytic_center, optimal_face_center
from cutlab.lp.simplex import solve_lp
from cutlab.measures import projection_is_feasible, score
from cutlab.model import is_lp_feasible
from cutlab.dominance.oracle import check_consistency, check_mineff_consistency
from cutlab.types.dominance import ConsistencyReport, SuiteReport
from cutlab.types.instance import Cut, CutOrigin, Incumbent, MipInstance
from cutlab.types.measures import MeasureKind, ScoringContext

logger = logging.getLogger(__name__)

BOX = 10.0
# relative gap two cut scores need to count as distinct
SCORE_GAP = 1e-3
CUT_ATTEMPTS = 200

EUCLIDEAN = (MeasureKind.EFF, MeasureKind.A_EFF)
DIRECTED = (MeasureKind.DCD, MeasureKind.A_DCD, MeasureKind.APP_A_DCD)


def random_polytope(rng: np.random.Generator, name: str = "random") -> Tuple[MipInstance, np.ndarray]:
    """A bounded polytope with nonempty interior, and an interior anchor point."""
    d = int(rng.integers(2, 5))
    k = int(rng.integers(3, 9))
    anchor = rng.uniform(2.0, 8.0, size=d)
    rows, rhs = [], []
    while len(rows) < k:
        through = rng.uniform(0.5, BOX - 0.5, size=d)
        a = rng.normal(size=d)
        side = float(a @ (through - anchor))
        if abs(side) < 0.1 * np.linalg.norm(a):
            continue
        if side < 0:
            a = -a
        rows.append(a)
        rhs.append(float(a @ through))
    inst = MipInstance(
        name=name,
        objective=rng.normal(size=d),
        rows=np.array(rows),
        rhs=np.array(rhs),
        lower=np.zeros(d),
        upper=np.full(d, BOX),
        integer=range(d),
    )
    return inst, anchor


def _face_objective(inst: MipInstance, rng: np.random.Generator) -> MipInstance:
    """Point the objective out through a random row so the optimal face is often not a vertex."""
    i = int(rng.integers(inst.m))
    return inst.with_objective(-inst.rows[i])


def _distinct(value: float, scores: Sequence[float]) -> bool:
    return all(abs(value - s) >= SCORE_GAP * max(1.0, abs(value), abs(s)) for s in scores)


def _draw_cuts(
    rng: np.random.Generator,
    propose: Callable[[np.random.Generator], Optional[Cut]],
    scorer: Callable[[Cut], float],
) -> List[Cut]:
    """Two to four accepted proposals with pairwise distinct scores."""
    wanted = int(rng.integers(2, 5))
    cuts: List[Cut] = []
    scores: List[float] = []
    for _ in range(CUT_ATTEMPTS):
        if len(cuts) >= wanted:
            break
        cut = propose(rng)
        if cut is None:
            continue
        value = scorer(cut)
        if _distinct(value, scores):
            cuts.append(cut)
            scores.append(value)
    return cuts


class _Tally:
    def __init__(self):
        self.instances = 0
        self.checked = 0
        self.excluded = 0
        self.violations = 0

    def add(self, report: ConsistencyReport) -> None:
        self.checked += report.pairs_checked
        self.excluded += len(report.pairs_excluded)
        self.violations += len(report.violations)
        for v in report.violations:
            logger.warning(
                f"{report.measure}: cut scored {v.higher_score:.6g} dominated by cut scored {v.lower_score:.6g}"
            )

    def report(self, suite: str, measures, trials: int, seed: int) -> SuiteReport:
        return SuiteReport(
            suite=suite,
            measures=tuple(m.value for m in measures),
            trials=trials,
            instances_used=self.instances,
            pairs_checked=self.checked,
            pairs_excluded=self.excluded,
            violations=self.violations,
            seed=seed,
        )


def euclidean_suite(
    trials: int = 1000,
    seed: int = 0,
    measures: Sequence[MeasureKind] = EUCLIDEAN,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SuiteReport:
    """eff and a-eff on cuts that all separate the reference point with LP-feasible projections."""
    tally = _Tally()
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        inst, _ = random_polytope(rng, name=f"euclidean-{seed}-{trial}")
        used = False
        for kind in measures:
            ref = _euclidean_reference(inst, kind, rng, tol)
            if ref is None:
                continue
            problem, ctx, point = ref

            def propose(r, problem=problem, point=point):
                a = r.normal(size=problem.n)
                a /= np.linalg.norm(a)
                cut = Cut(coeffs=a, rhs=float(a @ point) - r.uniform(0.2, 2.0), origin=CutOrigin.TEST)
                return cut if projection_is_feasible(problem, [], cut, point, tol) else None

            cuts = _draw_cuts(rng, propose, lambda cut, kind=kind, ctx=ctx: score(kind, cut, ctx, tol))
            if len(cuts) < 2:
                continue
            used = True
            tally.add(check_consistency(problem, [], cuts, kind, ctx, tol))
        tally.instances += used
    return tally.report("euclidean", measures, trials, seed)


def _euclidean_reference(inst, kind, rng, tol):
    if kind == MeasureKind.EFF:
        lp = solve_lp(inst, tol=tol)
        if not lp.is_optimal:
            return None
        return inst, ScoringContext(x_lp=lp.point), lp.point
    problem = _face_objective(inst, rng)
    lp = solve_lp(problem, tol=tol)
    if not lp.is_optimal:
        return None
    try:
        face = optimal_face_center(problem, [], lp, tol)
    except (NoConvergenceError, RegionEmptyError) as exc:
        logger.debug(f"{inst.name}: optimal face center unavailable ({exc})")
        return None
    return problem, ScoringContext(x_lp=lp.point, x_face=face), face.point


def directed_suite(
    trials: int = 1000,
    seed: int = 0,
    measures: Sequence[MeasureKind] = DIRECTED,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SuiteReport:
    """dcd, a-dcd and app-a-dcd on cuts that separate the LP point and keep the target."""
    tally = _Tally()
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        inst, anchor = random_polytope(rng, name=f"directed-{seed}-{trial}")
        lp = solve_lp(inst, tol=tol)
        if not lp.is_optimal:
            continue
        used = False
        for kind in measures:
            ctx = _directed_context(inst, kind, lp.point, anchor, tol)
            if ctx is None:
                continue
            target = _target_of(kind, ctx)
            span = target - lp.point
            if np.linalg.norm(span) <= 1e-6:
                continue

            def propose(r, x=lp.point, span=span):
                a = r.normal(size=x.shape[0])
                a /= np.linalg.norm(a)
                if a @ span > -0.1 * np.linalg.norm(span):
                    return None
                through = x + r.uniform(0.05, 0.9) * span
                return Cut(coeffs=a, rhs=float(a @ through), origin=CutOrigin.TEST)

            cuts = _draw_cuts(rng, propose, lambda cut, kind=kind, ctx=ctx: score(kind, cut, ctx, tol))
            if len(cuts) < 2:
                continue
            used = True
            tally.add(check_consistency(inst, [], cuts, kind, ctx, tol))
        tally.instances += used
    return tally.report("directed", measures, trials, seed)


def _directed_context(inst, kind, x_lp, anchor, tol) -> Optional[ScoringContext]:
    try:
        if kind == MeasureKind.DCD:
            incumbent = Incumbent(point=anchor, value=float(inst.objective @ anchor), source="suite")
            return ScoringContext(x_lp=x_lp, incumbent=incumbent)
        if kind == MeasureKind.A_DCD:
            return ScoringContext(x_lp=x_lp, x_center=analytic_center(inst, [], tol))
        # a center cached from a larger region stays usable while it is still LP-feasible
        larger = MipInstance(
            name=f"{inst.name}-relaxed", objective=inst.objective, rows=inst.rows[:-1], rhs=inst.rhs[:-1],
            lower=inst.lower, upper=inst.upper, integer=inst.integer, row_kind=inst.row_kind[:-1],
        )
        cached = analytic_center(larger, [], tol)
        if not is_lp_feasible(inst, cached.point, [], tol):
            cached = analytic_center(inst, [], tol)
        return ScoringContext(x_lp=x_lp, cached_center=cached, cache_valid=True)
    except (NoConvergenceError, RegionEmptyError) as exc:
        logger.debug(f"{inst.name}: center for {kind.value} unavailable ({exc})")
        return None


def _target_of(kind: MeasureKind, ctx: ScoringContext) -> np.ndarray:
    if kind == MeasureKind.DCD:
        return ctx.incumbent.point
    if kind == MeasureKind.A_DCD:
        return ctx.x_center.point
    return ctx.cached_center.point


def mineff_suite(
    trials: int = 1000,
    seed: int = 0,
    k: int = 3,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SuiteReport:
    """mineff over several LP optima; pairs outside the active-solution hypothesis are excluded."""
    tally = _Tally()
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        inst, _ = random_polytope(rng, name=f"mineff-{seed}-{trial}")
        inst = _face_objective(inst, rng)
        try:
            optima = collect_optima(inst, [], k, seed=trial, tol=tol)
        except LpInfeasibleError:
            continue
        ctx = ScoringContext(x_lp=optima.points[0], optima=optima)

        def propose(r, optima=optima):
            a = r.normal(size=inst.n)
            a /= np.linalg.norm(a)
            base = optima.points[int(r.integers(len(optima)))]
            return Cut(coeffs=a, rhs=float(a @ base) - r.uniform(0.05, 1.5), origin=CutOrigin.TEST)

        cuts = _draw_cuts(rng, propose, lambda cut: score(MeasureKind.MINEFF, cut, ctx, tol))
        if len(cuts) < 2:
            continue
        tally.instances += 1
        tally.add(check_mineff_consistency(inst, [], cuts, optima, tol))
    return tally.report("mineff", (MeasureKind.MINEFF,), trials, seed)
