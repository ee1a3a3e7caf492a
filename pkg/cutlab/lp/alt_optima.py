"""Distinct optimal vertices of an LP relaxation."""

import logging
from typing import Sequence

import numpy as np

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.errors import LpInfeasibleError
from cutlab.lp.simplex import solve_lp
from cutlab.types.instance import Cut, CutOrigin, MipInstance
from cutlab.types.solution import LpOutcome, OptimaSet

logger = logging.getLogger(__name__)

# optima closer than this in the infinity norm are merged
DISTINCT_TOL = 1e-7


def collect_optima(
    inst: MipInstance,
    cuts: Sequence[Cut] = (),
    k: int = 3,
    seed: int = 1,
    tol: Tolerances = DEFAULT_TOLERANCES,
    lp: LpOutcome = None,
) -> OptimaSet:
    """Up to ``k`` distinct optimal vertices.

    After the first solve, the LP is re-solved on the slice c.x <= z* with
    seeded random +-1 objectives (each one followed by its negation) for at
    most 2k attempts.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    cuts = list(cuts)
    if lp is None:
        lp = solve_lp(inst, cuts, pivot_seed=seed, tol=tol)
    if not lp.is_optimal:
        raise LpInfeasibleError(f"cannot collect optima of an LP with status {lp.status.value}")
    z_star = lp.value
    points = [np.array(lp.point)]

    slice_cuts = list(cuts)
    if np.any(inst.objective != 0.0):
        slice_cuts.append(Cut(coeffs=inst.objective, rhs=z_star, origin=CutOrigin.TEST))

    rng = np.random.default_rng(seed)
    w = None
    for attempt in range(2 * k):
        if len(points) >= k:
            break
        w = rng.choice([-1.0, 1.0], size=inst.n) if attempt % 2 == 0 else -w
        res = solve_lp(inst, slice_cuts, objective_override=w, pivot_seed=seed + attempt, tol=tol)
        if not res.is_optimal:
            # unbounded auxiliary objective on an unbounded face
            continue
        candidate = np.array(res.point)
        if abs(inst.objective @ candidate - z_star) > 1e-7 * (1.0 + abs(z_star)):
            continue
        if all(np.max(np.abs(candidate - p)) > DISTINCT_TOL for p in points):
            points.append(candidate)

    logger.debug(f"collected {len(points)} of {k} requested optima")
    return OptimaSet(points=tuple(points), k_requested=k, objective_value=z_star)
