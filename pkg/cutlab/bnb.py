"""Branch-and-bound on top of the cut-strengthened root, and a brute-force oracle."""

import heapq
import itertools
import logging
import math
import time
from typing import List, NamedTuple, Optional

import numpy as np

from cutlab.config import LabSettings
from cutlab.errors import (
    CutMadeInfeasibleError,
    EnumerationBudgetError,
    LpInfeasibleError,
    SolverError,
)
from cutlab.lp.auxiliary import bounds_list, solve_aux_lp
from cutlab.lp.simplex import solve_lp
from cutlab.model import is_fractional
from cutlab.separation.loop import run_separation
from cutlab.types.instance import Incumbent, MipInstance
from cutlab.types.records import BruteForceResult, MipStatus, NodeStats, SeparationConfig, SeparationResult
from cutlab.types.solution import LpStatus

logger = logging.getLogger(__name__)

_DEFAULT_SETTINGS = LabSettings()

MAX_ENUM_VARS = 22
MAX_ENUM_VALUES = 4
MAX_ENUM_ASSIGNMENTS = 2 ** 22
_ENUM_CHUNK = 65536


class BranchAndCutRun(NamedTuple):
    stats: NodeStats
    separation: Optional[SeparationResult]
    incumbent: Optional[Incumbent]


class _Node(NamedTuple):
    bound: float
    order: int
    lower: np.ndarray
    upper: np.ndarray


def _prune_tol(value: float, opt_tol: float) -> float:
    return opt_tol * (1.0 + abs(value)) if math.isfinite(value) else 0.0


def branch_and_cut(
    inst: MipInstance,
    cfg: SeparationConfig,
    time_limit: Optional[float] = None,
    provided_incumbent: Optional[Incumbent] = None,
    settings: Optional[LabSettings] = None,
) -> NodeStats:
    """Root separation per ``cfg``, then best-bound branch-and-bound with the root cuts kept globally."""
    return branch_and_cut_run(inst, cfg, time_limit, provided_incumbent, settings).stats


def branch_and_cut_run(
    inst: MipInstance,
    cfg: SeparationConfig,
    time_limit: Optional[float] = None,
    provided_incumbent: Optional[Incumbent] = None,
    settings: Optional[LabSettings] = None,
) -> BranchAndCutRun:
    """Like :func:`branch_and_cut`, also returning the root loop result and the best solution."""
    settings = settings or _DEFAULT_SETTINGS
    tol = settings.tolerances
    started = time.perf_counter()

    def elapsed() -> Optional[float]:
        return time.perf_counter() - started if settings.record_wall_time else None

    try:
        sep = run_separation(inst, cfg, incumbent=provided_incumbent, settings=settings)
    except LpInfeasibleError as exc:
        if isinstance(exc, CutMadeInfeasibleError):
            logger.warning(f"{inst.name}: {exc}")
        logger.info(f"{inst.name}: infeasible at the root")
        stats = NodeStats(
            status=MipStatus.INFEASIBLE, nodes_processed=1, lp_iterations_total=0,
            solve_time=elapsed(), primal_bound=math.inf, dual_bound=math.inf, gap_after_root=math.inf,
        )
        return BranchAndCutRun(stats, None, None)

    cuts = list(sep.cuts)
    iterations = sep.lp_iterations
    incumbent = provided_incumbent
    primal = provided_incumbent.value if provided_incumbent is not None else math.inf
    root_dual = sep.root_value

    order = itertools.count()
    heap: List[_Node] = [_Node(root_dual, next(order), inst.lower.copy(), inst.upper.copy())]
    nodes = 0
    status = MipStatus.OPTIMAL
    dual = root_dual

    while heap:
        if time_limit is not None and time.perf_counter() - started > time_limit:
            status = MipStatus.TIME_LIMIT
            break
        node = heapq.heappop(heap)
        if node.bound >= primal - _prune_tol(primal, tol.opt_tol):
            # every remaining node has at least this bound
            heap.clear()
            break
        dual = max(dual, node.bound)

        lp = solve_lp(
            inst.with_bounds(node.lower, node.upper), cuts, pivot_seed=cfg.seed, tol=tol,
            refactor_every=settings.refactor_every, stall_limit=settings.stall_limit,
        )
        nodes += 1
        iterations += lp.iterations
        if lp.status == LpStatus.UNBOUNDED:
            raise SolverError(f"{inst.name}: node LP is unbounded")
        if lp.status == LpStatus.INFEASIBLE:
            continue
        if lp.value >= primal - _prune_tol(primal, tol.opt_tol):
            continue

        frac = is_fractional(lp.point, tol) & inst.integer_mask
        if not frac.any():
            point = lp.point.copy()
            point[inst.integer_mask] = np.round(point[inst.integer_mask])
            incumbent = Incumbent(point=point, value=lp.value, source="branch-and-bound")
            primal = lp.value
            logger.debug(f"{inst.name}: node {nodes} found incumbent {primal:.6g}")
            continue

        distance = np.where(frac, np.minimum(lp.point % 1.0, 1.0 - lp.point % 1.0), -1.0)
        j = int(np.argmax(distance))
        down = node.upper.copy()
        down[j] = math.floor(lp.point[j])
        up = node.lower.copy()
        up[j] = math.ceil(lp.point[j])
        heapq.heappush(heap, _Node(lp.value, next(order), node.lower, down))
        heapq.heappush(heap, _Node(lp.value, next(order), up, node.upper))
        if nodes % 1000 == 0:
            logger.info(f"{inst.name}: {nodes} nodes, bounds [{dual:.6g}, {primal:.6g}], {len(heap)} open")

    if status == MipStatus.TIME_LIMIT:
        dual = min([primal] + [n.bound for n in heap])
    elif math.isfinite(primal):
        dual = primal
    else:
        status = MipStatus.INFEASIBLE
        dual = math.inf

    stats = NodeStats(
        status=status,
        nodes_processed=max(nodes, 1),
        lp_iterations_total=iterations,
        solve_time=elapsed(),
        primal_bound=primal,
        dual_bound=dual,
        gap_after_root=primal - root_dual if math.isfinite(primal) else math.inf,
        root_lp_value=root_dual,
        cuts_added=len(cuts),
    )
    logger.info(
        f"{inst.name}: {status.value} after {stats.nodes_processed} nodes, "
        f"{iterations} LP iterations, primal {primal:.6g}"
    )
    return BranchAndCutRun(stats, sep, incumbent)


def reference_incumbent(inst: MipInstance, settings: Optional[LabSettings] = None) -> Optional[Incumbent]:
    """Optimal solution found by plain branch-and-bound without cuts, if any."""
    run = branch_and_cut_run(inst, SeparationConfig(rounds=0), settings=settings)
    if run.incumbent is None:
        return None
    return run.incumbent.model_copy(update={"source": "reference"})


def _value_ranges(inst: MipInstance) -> List[np.ndarray]:
    ranges = []
    for j in inst.integer:
        lo, hi = inst.lower[j], inst.upper[j]
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise EnumerationBudgetError(f"integer variable x{j} is unbounded")
        values = np.arange(math.ceil(lo - 1e-9), math.floor(hi + 1e-9) + 1, dtype=float)
        if values.size > MAX_ENUM_VALUES:
            raise EnumerationBudgetError(f"integer variable x{j} takes {values.size} values, limit {MAX_ENUM_VALUES}")
        ranges.append(values)
    return ranges


def brute_force_optimum(inst: MipInstance, settings: Optional[LabSettings] = None) -> BruteForceResult:
    """Exact optimum by enumerating the integer variables, with an LP over the rest.

    Raises:
        EnumerationBudgetError: more than 22 integer variables, more than 4
            values for one of them, or more than 2^22 assignments.
    """
    settings = settings or _DEFAULT_SETTINGS
    tol = settings.tolerances
    if not inst.integer:
        lp = solve_lp(inst, tol=tol)
        if lp.status == LpStatus.INFEASIBLE:
            return BruteForceResult(status=MipStatus.INFEASIBLE, value=math.inf)
        if lp.status == LpStatus.UNBOUNDED:
            raise SolverError(f"{inst.name}: LP relaxation is unbounded")
        return BruteForceResult(
            status=MipStatus.OPTIMAL, value=lp.value,
            incumbent=Incumbent(point=lp.point, value=lp.value, source="enumeration"),
        )
    if len(inst.integer) > MAX_ENUM_VARS:
        raise EnumerationBudgetError(f"{len(inst.integer)} integer variables, limit {MAX_ENUM_VARS}")
    ranges = _value_ranges(inst)
    total = math.prod(r.size for r in ranges)
    if total > MAX_ENUM_ASSIGNMENTS:
        raise EnumerationBudgetError(f"{total} assignments, limit {MAX_ENUM_ASSIGNMENTS}")

    if inst.integer_mask.all():
        best_value, best_point = _enumerate_pure(inst, ranges, tol)
    else:
        best_value, best_point = _enumerate_mixed(inst, ranges, tol)
    logger.debug(f"{inst.name}: enumerated {total} assignments")
    if best_point is None:
        return BruteForceResult(status=MipStatus.INFEASIBLE, value=math.inf, assignments=total)
    return BruteForceResult(
        status=MipStatus.OPTIMAL,
        value=best_value,
        incumbent=Incumbent(point=best_point, value=best_value, source="enumeration"),
        assignments=total,
    )


def _enumerate_pure(inst, ranges, tol):
    best_value, best_point = math.inf, None
    grid = itertools.product(*ranges)
    while True:
        chunk = np.array(list(itertools.islice(grid, _ENUM_CHUNK)), dtype=float)
        if chunk.size == 0:
            return best_value, best_point
        worst = _chunk_violations(inst, chunk)
        values = chunk @ inst.objective
        values[worst > tol.feas_tol] = math.inf
        k = int(np.argmin(values))
        if values[k] < best_value:
            best_value, best_point = float(values[k]), chunk[k].copy()


def _chunk_violations(inst, chunk):
    """Worst row violation per assignment; bounds hold by construction."""
    if inst.m == 0:
        return np.zeros(chunk.shape[0])
    lhs = chunk @ inst.rows.T - inst.rhs
    if inst.eq_mask.any():
        lhs = np.hstack([lhs, -lhs[:, inst.eq_mask]])
    return lhs.max(axis=1)


def _enumerate_mixed(inst, ranges, tol):
    best_value, best_point = math.inf, None
    idx = list(inst.integer)
    le, eq = ~inst.eq_mask, inst.eq_mask
    for values in itertools.product(*ranges):
        lower, upper = inst.lower.copy(), inst.upper.copy()
        lower[idx] = values
        upper[idx] = values
        res = solve_aux_lp(
            inst.objective, inst.rows[le], inst.rhs[le], inst.rows[eq], inst.rhs[eq],
            bounds=bounds_list(lower, upper),
        )
        if res.status == LpStatus.UNBOUNDED:
            raise SolverError(f"{inst.name}: continuous part is unbounded")
        if res.status == LpStatus.OPTIMAL and res.value < best_value:
            best_value, best_point = res.value, res.x
    return best_value, best_point
