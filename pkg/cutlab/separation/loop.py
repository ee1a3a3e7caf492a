"""The root-node separation loop: solve, score, select, add, repeat."""

import logging
from typing import List, Optional, Tuple

import numpy as np

from cutlab.config import LabSettings
from cutlab.errors import (
    CacheInvalid,
    CutMadeInfeasibleError,
    LpInfeasibleError,
    NoConvergenceError,
    RegionEmptyError,
    SolverError,
)
from cutlab.features import extract_features
from cutlab.lp.alt_optima import collect_optima
from cutlab.lp.barrier import analytic_center, optimal_face_center
from cutlab.lp.simplex import solve_lp_with_state
from cutlab.measures import center_still_valid, projection_is_feasible, relative_density
from cutlab.model import is_fractional
from cutlab.separation.gomory import generate_gomory
from cutlab.separation.selection import filter_density, select_cuts
from cutlab.types.instance import Cut, Incumbent, MipInstance
from cutlab.types.measures import MeasureKind, ScoringContext
from cutlab.types.records import RoundReport, SeparationConfig, SeparationResult
from cutlab.types.solution import CenterPoint, LpOutcome, LpStatus

logger = logging.getLogger(__name__)

_DEFAULT_SETTINGS = LabSettings()


class _CenterCache:
    """The app-a-dcd cache: one analytic center per root loop."""

    def __init__(self):
        self.center: Optional[CenterPoint] = None
        self.invalidations = 0


def run_separation(
    inst: MipInstance,
    cfg: SeparationConfig,
    incumbent: Optional[Incumbent] = None,
    settings: Optional[LabSettings] = None,
) -> SeparationResult:
    """Run ``cfg.rounds`` separation rounds at the root.

    Stops early when the LP solution is integral or a round selects no cut.

    Raises:
        LpInfeasibleError: the root LP is infeasible.
        CutMadeInfeasibleError: the LP became infeasible after adding cuts.
    """
    settings = settings or _DEFAULT_SETTINGS
    tol = settings.tolerances
    cuts: List[Cut] = []
    reports: List[RoundReport] = []
    pending: Optional[dict] = None
    cache = _CenterCache()
    features = None
    root_value = np.nan
    lp_iterations = 0

    for r in range(cfg.rounds + 1):
        lp, state = solve_lp_with_state(
            inst, cuts, pivot_seed=cfg.seed, tol=tol,
            refactor_every=settings.refactor_every, stall_limit=settings.stall_limit,
        )
        lp_iterations += lp.iterations
        _check_status(lp, r)
        if pending is not None:
            reports.append(RoundReport(lp_value=lp.value, **pending))
            pending = None
        if r == 0:
            features = extract_features(inst, lp, tol)
        root_value = lp.value
        if r == cfg.rounds:
            break
        if not np.any(is_fractional(lp.point, tol) & inst.integer_mask):
            logger.info(f"{inst.name}: LP integral after {r} rounds")
            break

        candidates = generate_gomory(inst, cuts, lp, state, tol, round_index=r)
        filtered = filter_density(candidates, cfg.density_threshold, inst.n, tol)
        selected, kind, recomputed = _select(inst, cuts, lp, filtered, cfg, incumbent, cache, settings, r)

        infeasible = sum(
            1 for cut in selected if not projection_is_feasible(inst, cuts, cut, lp.point, tol)
        )
        logger.debug(
            f"round {r}: {len(candidates)} generated, {len(filtered)} after density filter, "
            f"{len(selected)} selected by {kind.value}"
        )
        round_fields = dict(
            round=r,
            generated=len(candidates),
            after_density_filter=len(filtered),
            added=len(selected),
            center_recomputed=recomputed,
            infeasible_projections=infeasible,
            measure_used=kind,
        )
        if not selected:
            reports.append(RoundReport(lp_value=lp.value, **round_fields))
            break
        cuts.extend(selected)
        pending = round_fields

    logger.info(f"{inst.name}: {len(cuts)} cuts in {len(reports)} rounds, root bound {root_value:.6g}")
    return SeparationResult(
        cuts=tuple(cuts),
        reports=tuple(reports),
        features=features,
        root_value=float(root_value),
        lp_iterations=lp_iterations,
        center_recomputations=cache.invalidations,
        max_relative_density=max((relative_density(cut, inst.n, tol) for cut in cuts), default=0.0),
    )


def _check_status(lp: LpOutcome, round_index: int) -> None:
    if lp.status == LpStatus.OPTIMAL:
        return
    if lp.status == LpStatus.UNBOUNDED:
        raise SolverError("LP relaxation is unbounded")
    if round_index == 0:
        raise LpInfeasibleError("root LP relaxation is infeasible")
    raise CutMadeInfeasibleError(f"LP became infeasible after round {round_index - 1}")


def _select(inst, cuts, lp, cands, cfg, incumbent, cache, settings, round_index
            ) -> Tuple[List[Cut], MeasureKind, bool]:
    tol = settings.tolerances
    kind = cfg.measure
    if not cands:
        return [], kind, False
    recomputed = False
    fields = {"x_lp": lp.point}
    try:
        if kind == MeasureKind.DCD:
            if incumbent is None:
                logger.warning(f"{inst.name}: no incumbent in round {round_index}, scoring dcd as eff")
                kind = MeasureKind.EFF
            else:
                fields["incumbent"] = incumbent
        elif kind == MeasureKind.EXP_IMPROV:
            fields["objective"] = inst.objective
        elif kind == MeasureKind.A_EFF:
            fields["x_face"] = optimal_face_center(inst, cuts, lp, tol, settings.max_newton)
            recomputed = True
        elif kind == MeasureKind.A_DCD:
            fields["x_center"] = analytic_center(inst, cuts, tol, settings.max_newton)
            recomputed = True
        elif kind == MeasureKind.APP_A_DCD:
            if cache.center is None:
                cache.center = analytic_center(inst, cuts, tol, settings.max_newton)
                recomputed = True
            fields["cached_center"] = cache.center
            fields["cache_valid"] = center_still_valid(inst, cuts, cache.center, tol)
        elif kind in (MeasureKind.AVGEFF, MeasureKind.MINEFF):
            fields["optima"] = collect_optima(inst, cuts, cfg.k_optima, cfg.seed, tol, lp=lp)
    except (NoConvergenceError, RegionEmptyError) as exc:
        logger.warning(f"{inst.name}: center for {kind.value} unavailable in round {round_index} ({exc}), scoring as eff")
        kind = MeasureKind.EFF
        fields = {"x_lp": lp.point}

    ctx = ScoringContext(**fields)
    try:
        return select_cuts(cands, ctx, cfg, tol, kind=kind), kind, recomputed
    except CacheInvalid:
        logger.debug(f"round {round_index}: cached center cut off, recomputing")
        cache.invalidations += 1
        try:
            cache.center = analytic_center(inst, cuts, tol, settings.max_newton)
        except (NoConvergenceError, RegionEmptyError) as exc:
            logger.warning(
                f"{inst.name}: center for {kind.value} unavailable in round {round_index} ({exc}), scoring as eff"
            )
            cache.center = None
            ctx = ScoringContext(x_lp=lp.point)
            return select_cuts(cands, ctx, cfg, tol, kind=MeasureKind.EFF), MeasureKind.EFF, False
        ctx = ctx.model_copy(update={"cached_center": cache.center, "cache_valid": True})
        return select_cuts(cands, ctx, cfg, tol, kind=kind), kind, True
