"""Distance-based cut scoring functions.

Every measure is 0-homogeneous in (alpha, beta): scaling a cut by t > 0 leaves
its score unchanged. Cuts that do not separate the measure's reference point
get their true non-positive score; filtering is up to the caller.
"""

import re
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.errors import (
    CacheInvalid,
    DegenerateDirectionError,
    MissingContextError,
    ParallelDirectionError,
)
from cutlab.model import is_lp_feasible, violation
from cutlab.types.instance import Cut, Incumbent, MipInstance
from cutlab.types.measures import MeasureKind, ScoringContext
from cutlab.types.solution import CenterPoint, OptimaSet

PointLike = Union[np.ndarray, Sequence[float], CenterPoint, Incumbent]


def _point(value: PointLike) -> np.ndarray:
    if isinstance(value, (CenterPoint, Incumbent)):
        return value.point
    return np.asarray(value, dtype=float)


def _norm(cut: Cut) -> float:
    norm = cut.norm
    if norm == 0.0:
        raise ValueError("cut coefficients are all zero")
    return norm


def score_eff(cut: Cut, x_lp: PointLike) -> float:
    """Signed Euclidean distance from ``x_lp`` to the cut hyperplane."""
    return violation(cut, _point(x_lp)) / _norm(cut)


def score_dcd(cut: Cut, x_lp: PointLike, target: PointLike, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Distance from ``x_lp`` to the hyperplane along the direction toward ``target``."""
    x_lp = _point(x_lp)
    direction = _point(target) - x_lp
    length = np.linalg.norm(direction)
    if length <= tol.zero_tol:
        raise DegenerateDirectionError("reference point coincides with the LP point")
    y = direction / length
    along = float(cut.coeffs @ y)
    if abs(along) <= tol.zero_tol:
        raise ParallelDirectionError("direction is parallel to the cut hyperplane")
    return violation(cut, x_lp) / abs(along)


def score_exp_improv(cut: Cut, x_lp: PointLike, objective: PointLike) -> float:
    """(alpha.c / |alpha|) * eff, with the sign taken as written for minimisation."""
    c = _point(objective)
    if not np.any(c != 0.0):
        raise ValueError("objective vector is zero")
    return float(cut.coeffs @ c) / _norm(cut) * score_eff(cut, x_lp)


def score_a_eff(cut: Cut, x_face: PointLike) -> float:
    return score_eff(cut, x_face)


def score_a_dcd(cut: Cut, x_lp: PointLike, x_center: PointLike, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return score_dcd(cut, x_lp, x_center, tol)


def center_still_valid(
    inst: MipInstance, current_cuts: Sequence[Cut], center: CenterPoint, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Whether a cached center is still LP-feasible once ``current_cuts`` are in the LP."""
    return is_lp_feasible(inst, center.point, current_cuts, tol)


def score_app_a_dcd(
    cut: Cut,
    x_lp: PointLike,
    cached_center: CenterPoint,
    inst: MipInstance,
    current_cuts: Sequence[Cut],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Directed cutoff distance toward a cached analytic center.

    Raises:
        CacheInvalid: the cached center is cut off by ``current_cuts``.
    """
    if not center_still_valid(inst, current_cuts, cached_center, tol):
        raise CacheInvalid("cached analytic center is no longer LP-feasible")
    return score_dcd(cut, x_lp, cached_center, tol)


def _efficacies(cut: Cut, optima: OptimaSet) -> np.ndarray:
    if len(optima) == 0:
        raise MissingContextError("optima set is empty")
    return (optima.as_matrix() @ cut.coeffs - cut.rhs) / _norm(cut)


def score_avgeff(cut: Cut, optima: OptimaSet) -> float:
    return float(np.mean(_efficacies(cut, optima)))


def score_mineff(cut: Cut, optima: OptimaSet) -> float:
    return float(np.min(_efficacies(cut, optima)))


def density(cut: Cut, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    return int(np.count_nonzero(np.abs(cut.coeffs) > tol.zero_tol))


def relative_density(cut: Cut, n: Optional[int] = None, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    n = cut.dim if n is None else n
    return density(cut, tol) / n


def projection(cut: Cut, x: PointLike) -> np.ndarray:
    """Orthogonal projection of ``x`` onto the cut hyperplane."""
    x = _point(x)
    return x - violation(cut, x) / _norm(cut) ** 2 * cut.coeffs


def projection_is_feasible(
    inst: MipInstance, cuts: Sequence[Cut], cut: Cut, x: PointLike, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Whether the efficacy projection of ``x`` onto ``cut`` is LP-feasible."""
    return is_lp_feasible(inst, projection(cut, x), cuts, tol)


_REQUIRED = {
    MeasureKind.EFF: (),
    MeasureKind.DCD: ("incumbent",),
    MeasureKind.EXP_IMPROV: ("objective",),
    MeasureKind.A_EFF: ("x_face",),
    MeasureKind.A_DCD: ("x_center",),
    MeasureKind.APP_A_DCD: ("cached_center",),
    MeasureKind.AVGEFF: ("optima",),
    MeasureKind.MINEFF: ("optima",),
}


def check_context(kind: MeasureKind, ctx: ScoringContext) -> None:
    for component in _REQUIRED[kind]:
        if getattr(ctx, component) is None:
            raise MissingContextError(f"measure '{kind.value}' needs context component '{component}'")


def score(kind: MeasureKind, cut: Cut, ctx: ScoringContext, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Score ``cut`` with measure ``kind`` from a prepared context."""
    check_context(kind, ctx)
    if kind == MeasureKind.EFF:
        return score_eff(cut, ctx.x_lp)
    if kind == MeasureKind.DCD:
        return score_dcd(cut, ctx.x_lp, ctx.incumbent, tol)
    if kind == MeasureKind.EXP_IMPROV:
        return score_exp_improv(cut, ctx.x_lp, ctx.objective)
    if kind == MeasureKind.A_EFF:
        return score_a_eff(cut, ctx.x_face)
    if kind == MeasureKind.A_DCD:
        return score_a_dcd(cut, ctx.x_lp, ctx.x_center, tol)
    if kind == MeasureKind.APP_A_DCD:
        if not ctx.cache_valid:
            raise CacheInvalid("cached analytic center is no longer LP-feasible")
        return score_dcd(cut, ctx.x_lp, ctx.cached_center, tol)
    if kind == MeasureKind.AVGEFF:
        return score_avgeff(cut, ctx.optima)
    if kind == MeasureKind.MINEFF:
        return score_mineff(cut, ctx.optima)
    raise ValueError(f"unknown measure {kind!r}")


_VARIANT = re.compile(r"^(?P<measure>[a-z-]+?)(?:-(?P<pct>\d{2}))?$")


def parse_variant(name: str) -> Tuple[MeasureKind, Optional[float]]:
    """'eff-20' -> (EFF, 0.20); plain measure names carry no density threshold."""
    name = name.strip().lower()
    try:
        return MeasureKind(name), None
    except ValueError:
        pass
    match = _VARIANT.match(name)
    if not match or match.group("pct") is None:
        raise ValueError(f"unknown measure or variant '{name}'")
    kind = MeasureKind(match.group("measure")) if match.group("measure") in _names() else None
    if kind is None:
        raise ValueError(f"unknown measure in variant '{name}'")
    threshold = int(match.group("pct")) / 100.0
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"density threshold in '{name}' must lie in (0, 1]")
    return kind, threshold


def variant_name(kind: MeasureKind, threshold: Optional[float] = None) -> str:
    if threshold is None:
        return kind.value
    return f"{kind.value}-{int(round(threshold * 100)):02d}"


def _names():
    return {kind.value for kind in MeasureKind}
