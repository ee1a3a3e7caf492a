"""Auxiliary LPs (phase-1 margins, slack ranges, dominance probes) solved by HiGHS."""

import logging
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from cutlab.errors import SolverError
from cutlab.types.solution import LpStatus

logger = logging.getLogger(__name__)


class AuxResult(NamedTuple):
    status: LpStatus
    x: Optional[np.ndarray]
    value: float


def solve_aux_lp(
    c: np.ndarray,
    A_ub: Optional[np.ndarray] = None,
    b_ub: Optional[np.ndarray] = None,
    A_eq: Optional[np.ndarray] = None,
    b_eq: Optional[np.ndarray] = None,
    bounds: Optional[Sequence[Tuple[Optional[float], Optional[float]]]] = None,
) -> AuxResult:
    """min c.x subject to the given rows; variables are free unless ``bounds`` says otherwise."""
    c = np.asarray(c, dtype=float)
    if bounds is None:
        bounds = [(None, None)] * c.shape[0]
    A_ub, b_ub = _nonempty(A_ub, b_ub)
    A_eq, b_eq = _nonempty(A_eq, b_eq)
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    if res.status == 0:
        return AuxResult(LpStatus.OPTIMAL, np.asarray(res.x), float(res.fun))
    if res.status == 2:
        return AuxResult(LpStatus.INFEASIBLE, None, np.inf)
    if res.status == 3:
        return AuxResult(LpStatus.UNBOUNDED, None, -np.inf)
    raise SolverError(f"auxiliary LP failed: {res.message}")


def bounds_list(lower: np.ndarray, upper: np.ndarray):
    """linprog bounds from arrays holding +-inf."""
    return [
        (None if not np.isfinite(lo) else float(lo), None if not np.isfinite(up) else float(up))
        for lo, up in zip(lower, upper)
    ]


def _nonempty(A, b):
    if A is None or len(A) == 0:
        return None, None
    return np.atleast_2d(A), np.asarray(b, dtype=float)
