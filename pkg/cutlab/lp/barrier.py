"""Analytic centers of the LP polytope and of its optimal face.

The barrier minimised is  -sum_i log(h_i + delta - G_i x)  over the affine set
E x = f, where G x <= h collects the LE rows, the cuts and the finite
variable bounds, and E x = f the EQ rows (plus c.x = z* for the face).
Inequalities that hold with equality on the whole region are detected by
auxiliary LPs and moved into E before Newton starts.
"""

import logging
from collections import deque
from typing import List, NamedTuple, Sequence

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, null_space

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.errors import NoConvergenceError, RegionEmptyError
from cutlab.lp.auxiliary import solve_aux_lp
from cutlab.types.instance import Cut, MipInstance
from cutlab.types.solution import CenterKind, CenterPoint, LpOutcome, LpStatus

logger = logging.getLogger(__name__)

ARMIJO_SHRINK = 0.5
ARMIJO_SLOPE = 0.25
MAX_STEP_FRACTION = 0.99
# iterates beyond this norm mean the barrier has no minimiser
DIVERGENCE_NORM = 1e12
DECREMENT_TAIL = 5


class BarrierProblem(NamedTuple):
    G: np.ndarray
    h: np.ndarray
    E: np.ndarray
    f: np.ndarray
    delta: float


def relaxation_slack(inst: MipInstance, cuts: Sequence[Cut] = ()) -> float:
    """delta = 1e-7 * (1 + max |b_i|) over rows and cuts."""
    rhs = np.concatenate([np.abs(inst.rhs), [abs(cut.rhs) for cut in cuts]])
    return 1e-7 * (1.0 + (rhs.max() if rhs.size else 0.0))


def barrier_problem(inst: MipInstance, cuts: Sequence[Cut] = ()) -> BarrierProblem:
    le = ~inst.eq_mask
    eye = np.eye(inst.n)
    up = np.isfinite(inst.upper)
    lo = np.isfinite(inst.lower)
    G = np.vstack(
        [inst.rows[le]]
        + [cut.coeffs[None, :] for cut in cuts]
        + [eye[up], -eye[lo]]
    )
    h = np.concatenate([inst.rhs[le], [cut.rhs for cut in cuts], inst.upper[up], -inst.lower[lo]])
    return BarrierProblem(
        G=G.reshape(-1, inst.n),
        h=h,
        E=inst.rows[inst.eq_mask].reshape(-1, inst.n),
        f=inst.rhs[inst.eq_mask],
        delta=relaxation_slack(inst, cuts),
    )


def analytic_center(
    inst: MipInstance,
    cuts: Sequence[Cut] = (),
    tol: Tolerances = DEFAULT_TOLERANCES,
    max_newton: int = 200,
) -> CenterPoint:
    """Analytic center of the LP relaxation polytope with ``cuts`` added.

    Raises:
        RegionEmptyError: the region has no (relaxed) interior point.
        NoConvergenceError: Newton stalls or the region is unbounded.
    """
    problem = barrier_problem(inst, cuts)
    return _center(problem, inst.n + inst.m + len(cuts), CenterKind.POLYTOPE, tol, max_newton)


def optimal_face_center(
    inst: MipInstance,
    cuts: Sequence[Cut],
    lp: LpOutcome,
    tol: Tolerances = DEFAULT_TOLERANCES,
    max_newton: int = 200,
) -> CenterPoint:
    """Analytic center of the optimal face {x in P : c.x = z*}."""
    if lp.status != LpStatus.OPTIMAL:
        raise RegionEmptyError(f"optimal face requested for an LP with status {lp.status.value}")
    problem = barrier_problem(inst, cuts)
    if np.any(inst.objective != 0.0):
        problem = problem._replace(
            E=np.vstack([problem.E, inst.objective[None, :]]),
            f=np.concatenate([problem.f, [lp.value]]),
        )
    return _center(problem, inst.n + inst.m + len(cuts), CenterKind.OPTIMAL_FACE, tol, max_newton)


def _center(problem: BarrierProblem, aux_cap: int, kind: CenterKind,
            tol: Tolerances, max_newton: int) -> CenterPoint:
    G, h, E, f, delta = problem
    x0, margin = _max_margin_point(G, h, E, f)
    tight: List[int] = []
    if margin <= tol.feas_tol:
        if margin < -tol.feas_tol:
            raise RegionEmptyError(f"region is empty (best margin {margin:.3g})")
        tight = _implicit_equalities(G, h, E, f, x0, aux_cap, tol)
        if tight:
            keep = np.setdiff1d(np.arange(G.shape[0]), tight)
            E = np.vstack([E, G[tight]])
            f = np.concatenate([f, h[tight]])
            G, h = G[keep], h[keep]
            x0, margin = _max_margin_point(G, h, E, f)
    if np.any(h + delta - G @ x0 <= 0.0):
        raise RegionEmptyError("no strictly interior starting point")

    x, iters, residual, tail = _newton(G, h, E, x0, delta, tol, max_newton)
    if any(later > earlier for earlier, later in zip(tail, tail[1:])):
        logger.warning(f"{kind.value}: Newton decrement rose in the last {len(tail)} iterations: {tail}")
    slack = h - G @ x
    logger.debug(f"{kind.value}: {iters} Newton iterations, {len(tight)} constraints fixed")
    return CenterPoint(
        point=x,
        kind=kind,
        newton_iters=iters,
        residual=residual,
        relaxation_slack=delta,
        tight_constraints=len(tight),
        min_slack=float(slack.min()) if slack.size else float("inf"),
        last_decrements=tail,
    )


def _max_margin_point(G, h, E, f):
    """max t s.t. G_i x + t |G_i| <= h_i, E x = f, t <= 1."""
    n = G.shape[1]
    norms = np.linalg.norm(G, axis=1)
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A_ub = np.hstack([G, norms[:, None]]) if G.shape[0] else None
    A_eq = np.hstack([E, np.zeros((E.shape[0], 1))]) if E.shape[0] else None
    bounds = [(None, None)] * n + [(None, 1.0)]
    res = solve_aux_lp(c, A_ub, h if G.shape[0] else None, A_eq, f if E.shape[0] else None, bounds)
    if res.status == LpStatus.INFEASIBLE:
        raise RegionEmptyError("region is empty")
    if res.status != LpStatus.OPTIMAL:
        raise NoConvergenceError(f"phase-1 LP ended with status {res.status.value}")
    return res.x[:n], float(res.x[-1])


def _implicit_equalities(G, h, E, f, x0, cap, tol) -> List[int]:
    """Inequalities whose slack is zero everywhere on the region."""
    slack = h - G @ x0
    scale = np.maximum(1.0, np.linalg.norm(G, axis=1))
    candidates = [int(i) for i in np.flatnonzero(slack <= tol.feas_tol * scale)]
    if len(candidates) > cap:
        logger.debug(f"{len(candidates)} tight candidates, probing the first {cap}")
        candidates = candidates[:cap]
    loose = set()
    tight = []
    for i in candidates:
        if i in loose:
            continue
        res = solve_aux_lp(G[i], G, h, E if E.shape[0] else None, f if E.shape[0] else None)
        if res.status != LpStatus.OPTIMAL:
            continue
        max_slack = h[i] - res.value
        if max_slack <= tol.feas_tol * scale[i]:
            tight.append(i)
        else:
            # rows this optimum leaves slack in are not implicit equalities either
            loose.update(int(k) for k in np.flatnonzero(h - G @ res.x > tol.feas_tol * scale))
    return tight


def _newton(G, h, E, x0, delta, tol, max_newton):
    n = x0.shape[0]
    Z = null_space(E) if E.shape[0] else np.eye(n)
    if Z.shape[1] == 0:
        return x0, 0, 0.0, ()
    GZ = G @ Z
    y = np.zeros(Z.shape[1])

    def slack_at(v):
        return h + delta - G @ x0 - GZ @ v

    def phi(v):
        s = slack_at(v)
        if np.any(s <= 0.0):
            return np.inf
        return -np.sum(np.log(s))

    residual = np.inf
    tail = deque(maxlen=DECREMENT_TAIL)
    for it in range(1, max_newton + 1):
        s = slack_at(y)
        inv = 1.0 / s
        grad = GZ.T @ inv
        hess = (GZ * (inv ** 2)[:, None]).T @ GZ
        try:
            step = -cho_solve(cho_factor(hess), grad)
        except LinAlgError:
            raise NoConvergenceError(
                "barrier Hessian is singular; the region is unbounded", iterations=it
            ) from None
        decrement = float(-grad @ step)
        residual = 0.5 * decrement
        tail.append(residual)
        if residual <= tol.center_tol:
            # final full step if it stays interior
            if np.all(slack_at(y + step) > 0.0):
                y = y + step
            return x0 + Z @ y, it, residual, tuple(tail)

        direction = GZ @ step
        blocking = direction > 0
        alpha = 1.0
        if np.any(blocking):
            alpha = min(1.0, MAX_STEP_FRACTION * float(np.min(s[blocking] / direction[blocking])))
        current = phi(y)
        while phi(y + alpha * step) > current - ARMIJO_SLOPE * alpha * decrement:
            alpha *= ARMIJO_SHRINK
            if alpha < 1e-16:
                raise NoConvergenceError("line search failed", iterations=it, residual=residual)
        y = y + alpha * step
        if np.linalg.norm(y) > DIVERGENCE_NORM:
            raise NoConvergenceError("barrier iterates diverge; the region is unbounded",
                                     iterations=it, residual=residual)
    raise NoConvergenceError(
        f"no convergence after {max_newton} Newton iterations", iterations=max_newton, residual=residual
    )
