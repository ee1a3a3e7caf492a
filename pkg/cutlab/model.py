"""Operations on the core problem and cut types."""

import numpy as np

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.errors import DimensionError
from cutlab.types.instance import Cut, MipInstance


def _as_point(x, n: int, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != n:
        raise DimensionError(f"{what} has dimension {n}, point has shape {x.shape}")
    return x


def violation(cut: Cut, x) -> float:
    """alpha . x - beta; positive iff ``x`` is separated by the cut."""
    x = _as_point(x, cut.dim, "cut")
    return float(cut.coeffs @ x - cut.rhs)


def row_violations(inst: MipInstance, x, cuts=()) -> np.ndarray:
    """Per-constraint violation of rows (EQ rows in both senses), cuts and bounds."""
    x = _as_point(x, inst.n, "instance")
    parts = [inst.rows @ x - inst.rhs]
    if inst.eq_mask.any():
        parts.append(inst.rhs[inst.eq_mask] - inst.rows[inst.eq_mask] @ x)
    parts.append(np.array([violation(cut, x) for cut in cuts], dtype=float))
    with np.errstate(invalid="ignore"):
        parts.append(np.where(np.isfinite(inst.lower), inst.lower - x, -np.inf))
        parts.append(np.where(np.isfinite(inst.upper), x - inst.upper, -np.inf))
    return np.concatenate(parts)


def is_lp_feasible(inst: MipInstance, x, cuts=(), tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    viol = row_violations(inst, x, cuts)
    return bool(viol.size == 0 or viol.max() <= tol.feas_tol)


def is_mip_feasible(inst: MipInstance, x, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Bounds, rows and integrality on the integer set, within tolerance."""
    x = _as_point(x, inst.n, "instance")
    if not is_lp_feasible(inst, x, tol=tol):
        return False
    xi = x[inst.integer_mask]
    return bool(np.all(np.abs(xi - np.round(xi)) <= tol.int_tol))


def fractional_part(values: np.ndarray) -> np.ndarray:
    return values - np.floor(values)


def is_fractional(values: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    frac = fractional_part(np.asarray(values, dtype=float))
    return (frac > tol.int_tol) & (frac < 1.0 - tol.int_tol)
