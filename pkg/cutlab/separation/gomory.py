"""Gomory mixed-integer cuts read off the optimal simplex tableau.

For a row  x_B + sum_j a_j x_j = b  of a fractional basic integer variable,
nonbasic columns are shifted to their active bound (t_j = x_j - l_j at lower,
t_j = u_j - x_j at upper) and the rounding inequality

    sum_{j integral} min(f_j / f0, (1 - f_j) / (1 - f0)) t_j
  + sum_{j continuous} max(a'_j / f0, -a'_j / (1 - f0)) t_j  >=  1

is mapped back to structural variables. A slack is integral when its row has
integer coefficients on integer variables only and an integer right-hand side.
An integer column resting on a fractional bound is rounded as continuous,
since its shifted value t_j is not integral.
"""

import logging
from typing import List, Sequence

import numpy as np

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.lp.simplex import SimplexState, tableau_row
from cutlab.model import fractional_part, is_fractional
from cutlab.types.instance import Cut, CutOrigin, MipInstance
from cutlab.types.solution import LpOutcome, VarStatus

logger = logging.getLogger(__name__)

# tableau entries below this are numerical noise
TABLEAU_ZERO = 1e-11
# cut coefficients below this are dropped with a compensating rhs shift
DROP_COEF = 1e-10
MAX_DYNAMISM = 1e9


def integral_columns(inst: MipInstance, cuts: Sequence[Cut], tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Integrality flags for structural then slack columns."""
    flags = [inst.integer_mask.copy()]
    for i in range(inst.m):
        row = inst.rows[i]
        nz = np.abs(row) > tol.zero_tol
        ok = (
            not np.any(nz & ~inst.integer_mask)
            and np.allclose(row, np.round(row))
            and abs(inst.rhs[i] - round(inst.rhs[i])) <= tol.zero_tol
        )
        flags.append(np.array([ok]))
    # cut slacks are treated as continuous
    flags.append(np.zeros(len(cuts), dtype=bool))
    return np.concatenate(flags)


def generate_gomory(
    inst: MipInstance,
    cuts: Sequence[Cut],
    lp: LpOutcome,
    state: SimplexState,
    tol: Tolerances = DEFAULT_TOLERANCES,
    round_index: int = 0,
) -> List[Cut]:
    """One cut per fractional basic integer variable, each violated by ``lp.point``."""
    if not lp.is_optimal:
        return []
    n = inst.n
    width = n + state.m
    integral = integral_columns(inst, cuts, tol)
    statuses = [state.status_of(j) for j in range(width)]
    fractional = is_fractional(lp.point, tol) & inst.integer_mask

    out: List[Cut] = []
    for j in np.flatnonzero(fractional):
        if not state.is_basic(int(j)):
            continue
        row = tableau_row(state, int(j))
        cut = _gmi_from_row(inst, state, row.coeffs, integral, statuses, int(j), tol)
        if cut is None:
            continue
        if cut.coeffs @ lp.point - cut.rhs <= tol.feas_tol:
            logger.debug(f"cut from row of x{j} is not violated after cleanup, skipped")
            continue
        out.append(cut.model_copy(update={"round": round_index}))
    logger.debug(f"generated {len(out)} Gomory cuts from {int(fractional.sum())} fractional variables")
    return out


def _gmi_from_row(inst, state, coeffs, integral, statuses, basic_var, tol):
    n = inst.n
    width = coeffs.shape[0]
    value = state.x[basic_var]
    shifted_rhs = value
    f0 = float(fractional_part(np.array([shifted_rhs]))[0])
    if min(f0, 1.0 - f0) < tol.int_tol:
        return None

    pi = np.zeros(width)
    sign = np.zeros(width)
    for k in range(width):
        a = coeffs[k]
        if k == basic_var or abs(a) <= TABLEAU_ZERO:
            continue
        status = statuses[k]
        if status == VarStatus.BASIC:
            continue
        if state.lo[k] == state.hi[k]:
            # fixed columns contribute a constant
            continue
        if status == VarStatus.FREE:
            return None
        a_shift = a if status == VarStatus.AT_LOWER else -a
        sign[k] = 1.0 if status == VarStatus.AT_LOWER else -1.0
        resting = state.lo[k] if status == VarStatus.AT_LOWER else state.hi[k]
        if integral[k] and abs(resting - round(resting)) <= tol.int_tol:
            fj = a_shift - np.floor(a_shift)
            pi[k] = min(fj / f0, (1.0 - fj) / (1.0 - f0))
        elif a_shift > 0:
            pi[k] = a_shift / f0
        else:
            pi[k] = -a_shift / (1.0 - f0)

    # sum_k pi_k t_k >= 1 with t_k = sign_k (x_k - bound_k); slacks x_{n+i} = b_i - A_i x
    g = np.zeros(n)
    const = 0.0
    for k in np.flatnonzero(pi):
        bound = state.lo[k] if sign[k] > 0 else state.hi[k]
        w = pi[k] * sign[k]
        const -= w * bound
        if k < n:
            g[k] += w
        else:
            i = k - n
            g -= w * state.A[i]
            const += w * state.b[i]
    alpha = -g
    beta = const - 1.0
    return _clean(alpha, beta, inst, tol)


def _clean(alpha, beta, inst, tol):
    """Drop tiny coefficients (shifting the rhs so the cut stays valid) and rescale."""
    alpha = alpha.copy()
    for j in np.flatnonzero((np.abs(alpha) < DROP_COEF) & (alpha != 0.0)):
        bound = inst.lower[j] if alpha[j] > 0 else inst.upper[j]
        if not np.isfinite(bound):
            continue
        beta -= alpha[j] * bound
        alpha[j] = 0.0
    nz = np.abs(alpha[alpha != 0.0])
    if nz.size == 0:
        return None
    if nz.max() / nz.min() > MAX_DYNAMISM:
        return None
    scale = nz.max()
    return Cut(coeffs=alpha / scale, rhs=beta / scale, origin=CutOrigin.GOMORY)
