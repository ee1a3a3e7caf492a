"""Root-node instance features.

Only structural variables are counted as basic or nonbasic; slack reduced
costs equal row duals and would count degeneracy twice.
"""

import numpy as np

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.errors import MissingContextError
from cutlab.model import is_fractional
from cutlab.types.instance import MipInstance
from cutlab.types.learning import FeatureVector
from cutlab.types.solution import LpOutcome, VarStatus

CSV_HEADER = ("instance", "seed", "dual_deg", "primal_deg", "frac", "thin", "density")


def _ratio(count: int, total: int) -> float:
    # an empty denominator means none of the phenomenon
    return min(1.0, count / total) if total else 0.0


def extract_features(inst: MipInstance, lp: LpOutcome, tol: Tolerances = DEFAULT_TOLERANCES) -> FeatureVector:
    if not lp.is_optimal:
        raise MissingContextError(f"features need an optimal LP, got {lp.status.value}")
    if len(lp.basis) != inst.n or lp.reduced_costs is None or lp.point is None:
        raise MissingContextError("LP outcome carries no basis information")

    basic = np.array([status == VarStatus.BASIC for status in lp.basis], dtype=bool)
    nonbasic = ~basic
    zero_rc = np.abs(lp.reduced_costs) <= tol.zero_tol
    x = lp.point
    with np.errstate(invalid="ignore"):
        at_bound = (np.abs(x - inst.lower) <= tol.feas_tol) | (np.abs(inst.upper - x) <= tol.feas_tol)
    frac = is_fractional(x, tol) & inst.integer_mask
    nnz = int(np.count_nonzero(np.abs(inst.rows) > tol.zero_tol))

    return FeatureVector(
        dual_degeneracy=_ratio(int(np.sum(nonbasic & zero_rc)), int(nonbasic.sum())),
        primal_degeneracy=_ratio(int(np.sum(basic & at_bound)), int(basic.sum())),
        fractionality=_ratio(int(frac.sum()), len(inst.integer)),
        thinness=_ratio(int(inst.eq_mask.sum()), inst.m),
        density=_ratio(nnz, inst.m * inst.n),
    )
