import logging
from typing import List, Optional, Sequence

import numpy as np

from cutlab.config import DEFAULT_TOLERANCES, Tolerances
from cutlab.errors import DegenerateDirectionError, ParallelDirectionError
from cutlab.measures import check_context, relative_density, score
from cutlab.types.instance import Cut
from cutlab.types.measures import MeasureKind, ScoringContext
from cutlab.types.records import SeparationConfig

logger = logging.getLogger(__name__)


def filter_density(
    cands: Sequence[Cut], threshold: Optional[float], n: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> List[Cut]:
    """Keep cuts with relative density <= ``threshold``, in order."""
    if threshold is None:
        return list(cands)
    return [cut for cut in cands if relative_density(cut, n, tol) <= threshold + 1e-12]


def cosine(a: Cut, b: Cut) -> float:
    return float(a.coeffs @ b.coeffs) / (a.norm * b.norm)


def score_all(
    cands: Sequence[Cut], kind: MeasureKind, ctx: ScoringContext, tol: Tolerances = DEFAULT_TOLERANCES
) -> np.ndarray:
    """Scores per candidate; cuts a directed measure cannot score get -inf."""
    check_context(kind, ctx)
    scores = np.empty(len(cands))
    for i, cut in enumerate(cands):
        try:
            scores[i] = score(kind, cut, ctx, tol)
        except (DegenerateDirectionError, ParallelDirectionError) as exc:
            logger.debug(f"candidate {i} not scoreable under {kind.value}: {exc}")
            scores[i] = -np.inf
    return scores


def select_cuts(
    cands: Sequence[Cut],
    ctx: ScoringContext,
    cfg: SeparationConfig,
    tol: Tolerances = DEFAULT_TOLERANCES,
    kind: Optional[MeasureKind] = None,
) -> List[Cut]:
    """Greedy selection by score with a parallelism filter.

    Repeatedly takes the best remaining candidate (lower index on ties) and
    discards the candidates whose cosine with it exceeds the threshold. Stops
    at the per-round budget or when the best score is not positive.
    """
    kind = cfg.measure if kind is None else kind
    scores = score_all(cands, kind, ctx, tol)
    remaining = list(range(len(cands)))
    selected: List[Cut] = []
    while remaining and len(selected) < cfg.max_cuts_per_round:
        # argmax returns the first maximiser, i.e. the lowest index
        best = remaining[int(np.argmax(scores[remaining]))]
        if not scores[best] > 0.0:
            break
        chosen = cands[best]
        selected.append(chosen)
        remaining = [
            i for i in remaining
            if i != best and cosine(cands[i], chosen) <= cfg.parallelism_threshold
        ]
    return selected
