"""Two fixed planar configurations where a measure prefers a dominated cut."""

from typing import NamedTuple, Optional

import numpy as np

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.dominance.oracle import check_consistency
from cutlab.types.dominance import ConsistencyReport
from cutlab.types.instance import Cut, CutOrigin, MipInstance
from cutlab.types.measures import MeasureKind, ScoringContext


class Counterexample(NamedTuple):
    instance: MipInstance
    dominating: Cut
    dominated: Cut
    x_lp: np.ndarray
    objective: np.ndarray
    # the measure that ranks ``dominated`` above ``dominating``
    measure: MeasureKind


def build_exp_improv_counterexample() -> Counterexample:
    """Box [0,4]^2 minimising -x1 - x2, so the LP vertex is (4, 4).

    The dashed cut x1 <= 3 dominates the dotted cut x1 + x2 <= 7.5 (every box
    point with x1 + x2 > 7.5 has x1 > 3.5), yet the dotted cut is more aligned
    with the objective and gets the higher exp-improv score: -0.5 against -1.
    Both projections of (4, 4) stay in the box, so eff ranks dashed first.
    """
    inst = MipInstance(
        name="exp-improv-counterexample",
        objective=[-1.0, -1.0],
        rows=[],
        rhs=[],
        lower=[0.0, 0.0],
        upper=[4.0, 4.0],
        integer=[0, 1],
    )
    dashed = Cut(coeffs=np.array([1.0, 0.0]), rhs=3.0, origin=CutOrigin.TEST)
    dotted = Cut(coeffs=np.array([1.0, 1.0]), rhs=7.5, origin=CutOrigin.TEST)
    return Counterexample(
        instance=inst,
        dominating=dashed,
        dominated=dotted,
        x_lp=np.array([4.0, 4.0]),
        objective=np.array([-1.0, -1.0]),
        measure=MeasureKind.EXP_IMPROV,
    )


def build_infeasible_projection_counterexample() -> Counterexample:
    """Triangle x1 + 4 x2 <= 4 in the nonnegative quadrant, minimising -x1.

    From the LP vertex (4, 0) the dotted cut x1 <= 3 is at distance 1 and the
    dashed cut x1 - 2 x2 <= 2.5 at distance 1.5 / sqrt(5). The dashed cut
    removes every triangle point the dotted one removes (x2 <= 0.25 there), but
    its projection (3.7, 0.6) leaves the triangle, so efficacy prefers the
    dominated dotted cut.
    """
    inst = MipInstance(
        name="infeasible-projection-counterexample",
        objective=[-1.0, 0.0],
        rows=[[1.0, 4.0]],
        rhs=[4.0],
        lower=[0.0, 0.0],
        upper=[10.0, 10.0],
        integer=[0, 1],
    )
    dashed = Cut(coeffs=np.array([1.0, -2.0]), rhs=2.5, origin=CutOrigin.TEST)
    dotted = Cut(coeffs=np.array([1.0, 0.0]), rhs=3.0, origin=CutOrigin.TEST)
    return Counterexample(
        instance=inst,
        dominating=dashed,
        dominated=dotted,
        x_lp=np.array([4.0, 0.0]),
        objective=np.array([-1.0, 0.0]),
        measure=MeasureKind.EFF,
    )


def counterexample_report(
    example: Counterexample,
    measure: Optional[MeasureKind] = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ConsistencyReport:
    """Consistency check of the pair (dominated first) under ``measure`` (its own by default)."""
    measure = example.measure if measure is None else measure
    ctx = ScoringContext(x_lp=example.x_lp, objective=example.objective)
    return check_consistency(
        example.instance, [], [example.dominated, example.dominating], measure, ctx, tol
    )
