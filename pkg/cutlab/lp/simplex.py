"""Dense bounded-variable primal simplex.

Every LP row i (instance rows, then cuts) gets a slack s_i = b_i - A_i x with
bounds [0, inf) for LE rows and [0, 0] for EQ rows, so the working system is
[A | I] (x, s) = b with bounds on every column. Nonbasic columns sit at a
finite bound, or at zero when both bounds are infinite.

Rows whose initial slack is out of bounds get an artificial column; phase 1
minimises the artificial sum and phase 2 fixes artificials at zero.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.errors import DimensionError, NotBasicError, SolverError
from cutlab.types.instance import Cut, MipInstance
from cutlab.types.solution import LpOutcome, LpStatus, TableauRow, VarStatus

logger = logging.getLogger(__name__)

# entries of the entering column below this are not pivot candidates
PIVOT_TOL = 1e-9
# steps below this count as degenerate
DEGENERATE_STEP = 1e-12


class SimplexState:
    """Working data of one simplex solve. Single owner, not shareable."""

    def __init__(
        self,
        inst: MipInstance,
        cuts: Sequence[Cut],
        objective: np.ndarray,
        pivot_seed: int,
        tol: Tolerances,
        refactor_every: int,
        stall_limit: int,
    ):
        n = inst.n
        for cut in cuts:
            if cut.dim != n:
                raise DimensionError(f"cut has dimension {cut.dim}, instance has {n}")
        if objective.shape != (n,):
            raise DimensionError(f"objective has shape {objective.shape}, expected ({n},)")

        rows = [inst.rows] + [cut.coeffs[None, :] for cut in cuts]
        self.A = np.vstack(rows) if cuts else np.array(inst.rows)
        self.b = np.concatenate([inst.rhs, [cut.rhs for cut in cuts]]) if cuts else np.array(inst.rhs)
        self.n = n
        self.m = self.A.shape[0]
        self.tol = tol
        self.refactor_every = refactor_every
        self.stall_limit = stall_limit
        self.objective = objective

        eq = np.concatenate([inst.eq_mask, np.zeros(len(cuts), dtype=bool)])
        slack_hi = np.where(eq, 0.0, np.inf)
        self.lo = np.concatenate([inst.lower, np.zeros(self.m)])
        self.hi = np.concatenate([inst.upper, slack_hi])
        self.M = np.hstack([self.A, np.eye(self.m)])
        self.cost = np.concatenate([objective, np.zeros(self.m)])
        self.n_art = 0

        self.rng = np.random.default_rng(pivot_seed)
        self.iterations = 0
        self.pivots_since_refactor = 0
        self.bland = False
        self.degenerate_run = 0

        self.x = np.zeros(n + self.m)
        for j in range(n):
            self.x[j] = self._resting_value(j)
        self.basis: List[int] = list(range(n, n + self.m))
        self.x[n:] = self.b - self.A @ self.x[:n]
        self._add_artificials()
        self.rank = self.rng.permutation(self.M.shape[1])
        self.B_inv = np.eye(self.m)
        self.refactor()

    # ----- setup -----

    def _resting_value(self, j: int) -> float:
        if np.isfinite(self.lo[j]):
            return self.lo[j]
        if np.isfinite(self.hi[j]):
            return self.hi[j]
        return 0.0

    def _add_artificials(self) -> None:
        """Replace out-of-bounds initial slacks by artificial basic columns."""
        n, m = self.n, self.m
        columns = []
        for i in range(m):
            s = self.x[n + i]
            target = min(max(s, self.lo[n + i]), self.hi[n + i])
            excess = s - target
            if abs(excess) <= self.tol.feas_tol:
                continue
            col = np.zeros(m)
            col[i] = np.sign(excess)
            columns.append((i, col, abs(excess)))
            self.x[n + i] = target
        if not columns:
            return
        k = len(columns)
        self.n_art = k
        art_cols = np.column_stack([col for _, col, _ in columns])
        self.M = np.hstack([self.M, art_cols])
        self.lo = np.concatenate([self.lo, np.zeros(k)])
        self.hi = np.concatenate([self.hi, np.full(k, np.inf)])
        self.cost = np.concatenate([self.cost, np.zeros(k)])
        self.x = np.concatenate([self.x, [value for _, _, value in columns]])
        for a, (i, _, _) in enumerate(columns):
            self.basis[i] = n + m + a

    @property
    def n_total(self) -> int:
        return self.M.shape[1]

    @property
    def artificial_range(self) -> range:
        start = self.n + self.m
        return range(start, start + self.n_art)

    # ----- linear algebra -----

    def refactor(self) -> None:
        """Rebuild B^-1 from a fresh LU factorisation and recompute basic values."""
        self.pivots_since_refactor = 0
        if self.m == 0:
            self.B_inv = np.zeros((0, 0))
            return
        B = self.M[:, self.basis]
        lu, piv = lu_factor(B, check_finite=False)
        if np.min(np.abs(np.diag(lu))) <= self.tol.zero_tol:
            raise SolverError("basis matrix is singular")
        self.B_inv = lu_solve((lu, piv), np.eye(self.m), check_finite=False)
        nonbasic = self._nonbasic_mask()
        rhs = self.b - self.M[:, nonbasic] @ self.x[nonbasic]
        self.x[self.basis] = self.B_inv @ rhs

    def _nonbasic_mask(self) -> np.ndarray:
        mask = np.ones(self.n_total, dtype=bool)
        mask[self.basis] = False
        return mask

    def duals(self, cost: np.ndarray) -> np.ndarray:
        return cost[self.basis] @ self.B_inv

    def reduced_costs(self, cost: np.ndarray) -> np.ndarray:
        d = cost - self.duals(cost) @ self.M
        d[self.basis] = 0.0
        return d

    # ----- pivoting -----

    def _entering(self, d: np.ndarray) -> Optional[int]:
        opt = self.tol.opt_tol
        nonbasic = self._nonbasic_mask()
        movable = self.hi > self.lo
        at_lo = np.isclose(self.x, self.lo) & np.isfinite(self.lo)
        at_hi = np.isclose(self.x, self.hi) & np.isfinite(self.hi)
        free = ~at_lo & ~at_hi
        up = at_lo & (d < -opt)
        down = at_hi & (d > opt)
        either = free & (np.abs(d) > opt)
        candidates = np.flatnonzero(nonbasic & movable & (up | down | either))
        if candidates.size == 0:
            return None
        if self.bland:
            return int(candidates[0])
        score = np.abs(d[candidates])
        best = score.max()
        tied = candidates[score >= best - 1e-12 * max(1.0, best)]
        return int(tied[np.argmin(self.rank[tied])])

    def _ratio_test(self, q: int, direction: float, alpha: np.ndarray) -> Tuple[float, Optional[int], float]:
        """Largest step for column q and the blocking basic position (None for a bound flip)."""
        step = self.hi[q] - self.lo[q]
        leave = None
        leave_bound = np.nan
        move = -direction * alpha
        xb = self.x[self.basis]
        lo_b = self.lo[self.basis]
        hi_b = self.hi[self.basis]
        best_pivot = 0.0
        for r in range(self.m):
            if abs(alpha[r]) <= PIVOT_TOL:
                continue
            if move[r] < 0 and np.isfinite(lo_b[r]):
                limit = max(xb[r] - lo_b[r], 0.0) / -move[r]
                bound = lo_b[r]
            elif move[r] > 0 and np.isfinite(hi_b[r]):
                limit = max(hi_b[r] - xb[r], 0.0) / move[r]
                bound = hi_b[r]
            else:
                continue
            if leave is not None and abs(limit - step) <= 1e-12 * max(1.0, step):
                # tie: Bland keeps the smallest basic index, otherwise the larger pivot
                if self.bland:
                    better = self.basis[r] < self.basis[leave]
                else:
                    better = abs(alpha[r]) > best_pivot
                if not better:
                    continue
            elif limit >= step:
                continue
            step, leave, leave_bound, best_pivot = limit, r, bound, abs(alpha[r])
        return step, leave, leave_bound

    def _pivot(self, r: int, q: int, alpha: np.ndarray) -> None:
        pivot = alpha[r]
        row = self.B_inv[r] / pivot
        self.B_inv -= np.outer(alpha, row)
        self.B_inv[r] = row
        self.basis[r] = q
        self.pivots_since_refactor += 1
        if self.pivots_since_refactor >= self.refactor_every:
            self.refactor()

    def iterate(self, cost: np.ndarray, max_iterations: int) -> LpStatus:
        """Run primal simplex on ``cost`` from the current feasible basis."""
        while True:
            if self.iterations >= max_iterations:
                raise SolverError(f"simplex iteration limit {max_iterations} reached")
            d = self.reduced_costs(cost)
            q = self._entering(d)
            if q is None:
                return LpStatus.OPTIMAL
            direction = -1.0 if d[q] > 0 else 1.0
            alpha = self.B_inv @ self.M[:, q] if self.m else np.zeros(0)
            step, leave, bound = self._ratio_test(q, direction, alpha)
            if not np.isfinite(step):
                return LpStatus.UNBOUNDED

            self.iterations += 1
            self.x[q] += direction * step
            if self.m:
                self.x[self.basis] -= direction * step * alpha
            if leave is None:
                # bound flip
                self.x[q] = self.hi[q] if direction > 0 else self.lo[q]
            else:
                p = self.basis[leave]
                self.x[p] = bound
                self._pivot(leave, q, alpha)

            if step <= DEGENERATE_STEP:
                self.degenerate_run += 1
                if not self.bland and self.degenerate_run >= self.stall_limit:
                    logger.warning(
                        f"{self.degenerate_run} degenerate pivots in a row, switching to Bland's rule"
                    )
                    self.bland = True
            else:
                self.degenerate_run = 0
                self.bland = False

    def drive_out_artificials(self) -> None:
        """Pivot zero-valued artificials out of the basis where a real column allows it."""
        arts = set(self.artificial_range)
        for r in range(self.m):
            if self.basis[r] not in arts:
                continue
            row = self.B_inv[r] @ self.M[:, : self.n + self.m]
            row[[j for j in self.basis if j < self.n + self.m]] = 0.0
            j = int(np.argmax(np.abs(row)))
            if abs(row[j]) <= 1e-7:
                # redundant row; the artificial stays basic, fixed at zero
                continue
            alpha = self.B_inv @ self.M[:, j]
            p = self.basis[r]
            self._pivot(r, j, alpha)
            self.x[p] = 0.0
        self.refactor()

    # ----- reporting -----

    def status_of(self, j: int) -> VarStatus:
        if j in self._basis_set():
            return VarStatus.BASIC
        if np.isfinite(self.lo[j]) and np.isclose(self.x[j], self.lo[j]):
            return VarStatus.AT_LOWER
        if np.isfinite(self.hi[j]) and np.isclose(self.x[j], self.hi[j]):
            return VarStatus.AT_UPPER
        return VarStatus.FREE

    def _basis_set(self) -> set:
        return set(self.basis)

    def is_basic(self, j: int) -> bool:
        return j in self._basis_set()


def solve_lp_with_state(
    inst: MipInstance,
    extra_cuts: Iterable[Cut] = (),
    objective_override: Optional[np.ndarray] = None,
    pivot_seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    refactor_every: int = 50,
    stall_limit: int = 50,
) -> Tuple[LpOutcome, SimplexState]:
    """Solve min c.x over the LP relaxation plus ``extra_cuts``.

    Infeasible and unbounded LPs are reported through the outcome status.
    """
    cuts = list(extra_cuts)
    objective = inst.objective if objective_override is None else np.asarray(objective_override, dtype=float)
    state = SimplexState(inst, cuts, objective, pivot_seed, tol, refactor_every, stall_limit)
    max_iterations = 50 * (state.n_total + state.m) + 1000

    if state.n_art:
        phase1 = np.zeros(state.n_total)
        phase1[list(state.artificial_range)] = 1.0
        state.iterate(phase1, max_iterations)
        infeasibility = float(state.x[list(state.artificial_range)].sum())
        logger.debug(f"phase 1 ended after {state.iterations} iterations, infeasibility {infeasibility:.3g}")
        if infeasibility > tol.feas_tol:
            return LpOutcome(status=LpStatus.INFEASIBLE, iterations=state.iterations), state
        state.x[list(state.artificial_range)] = 0.0
        state.hi[list(state.artificial_range)] = 0.0
        state.drive_out_artificials()

    status = state.iterate(state.cost, max_iterations)
    if status == LpStatus.UNBOUNDED:
        return LpOutcome(status=status, iterations=state.iterations), state

    state.refactor()
    point = state.x[: inst.n].copy()
    d = state.reduced_costs(state.cost)
    outcome = LpOutcome(
        status=LpStatus.OPTIMAL,
        value=float(objective @ point),
        point=point,
        basis=tuple(state.status_of(j) for j in range(inst.n)),
        row_basis=tuple(state.status_of(inst.n + i) for i in range(state.m)),
        reduced_costs=d[: inst.n],
        duals=state.duals(state.cost),
        iterations=state.iterations,
    )
    return outcome, state


def solve_lp(
    inst: MipInstance,
    extra_cuts: Iterable[Cut] = (),
    objective_override: Optional[np.ndarray] = None,
    pivot_seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    refactor_every: int = 50,
    stall_limit: int = 50,
) -> LpOutcome:
    outcome, _ = solve_lp_with_state(
        inst, extra_cuts, objective_override, pivot_seed, tol, refactor_every, stall_limit
    )
    return outcome


def tableau_row(state: SimplexState, basic_var: int) -> TableauRow:
    """Row of the final tableau expressing ``basic_var`` through the nonbasic columns.

    Columns are the structural variables followed by the row slacks.
    """
    width = state.n + state.m
    if not 0 <= basic_var < width:
        raise NotBasicError(f"variable index {basic_var} out of range [0, {width})")
    try:
        r = state.basis.index(basic_var)
    except ValueError:
        raise NotBasicError(f"variable {basic_var} is not basic") from None
    coeffs = state.B_inv[r] @ state.M[:, :width]
    for j in state.basis:
        if j < width:
            coeffs[j] = 0.0
    coeffs[basic_var] = 1.0
    rhs = float(state.B_inv[r] @ state.b)
    return TableauRow(basic_var=basic_var, coeffs=coeffs, rhs=rhs)
