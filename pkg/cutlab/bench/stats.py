"""Aggregate statistics over experiment records."""

import logging
import math
from collections import defaultdict
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import gmean

from cutlab.measures import parse_variant
from cutlab.regress.kernel import pick_measure
from cutlab.types.learning import RegressionModel, TrainingRecord
from cutlab.types.measures import MeasureKind
from cutlab.types.records import ExperimentRecord, MipStatus
from cutlab.types.stats import DensityRow, HeadToHead, PickerSummary

logger = logging.getLogger(__name__)

DENSITY_SUBSETS = (0.0, 0.2, 0.4, 0.6, 0.8)
# (metric, shift) pairs of the density summary
DENSITY_SHIFTS = (("gap", 1.0), ("cuts", 10.0), ("rounds", 1.0), ("lp_iterations", 100.0), ("nodes", 10.0))

_METRICS: Dict[str, Callable[[ExperimentRecord], float]] = {
    "nodes": lambda r: float(r.stats.nodes_processed),
    # wall time only when it was recorded; LP iterations otherwise
    "time": lambda r: r.stats.solve_time if r.stats.solve_time is not None else float(r.stats.lp_iterations_total),
    "gap": lambda r: r.stats.gap_after_root,
    "gap_after_root": lambda r: r.stats.gap_after_root,
    "cuts": lambda r: float(r.cuts_added),
    "rounds": lambda r: float(r.rounds_executed),
    "lp_iterations": lambda r: float(r.stats.lp_iterations_total),
}


def metric_value(record: ExperimentRecord, metric: str) -> float:
    try:
        return _METRICS[metric](record)
    except KeyError:
        raise ValueError(f"unknown metric '{metric}', expected one of {sorted(_METRICS)}") from None


def _by_instance(records: Iterable[ExperimentRecord]) -> Dict[str, Dict[str, Dict[int, ExperimentRecord]]]:
    table: Dict[str, Dict[str, Dict[int, ExperimentRecord]]] = defaultdict(lambda: defaultdict(dict))
    for rec in records:
        table[rec.instance][rec.variant][rec.seed] = rec
    return table


def _variants(records: Sequence[ExperimentRecord]) -> Tuple[str, ...]:
    """Variants in measure declaration order, density variants after their measure."""
    def key(name: str):
        kind, threshold = parse_variant(name)
        return MeasureKind.ordered().index(kind), -(threshold or 2.0)
    return tuple(sorted({r.variant for r in records}, key=key))


def _timed_out(variants: Dict[str, Dict[int, ExperimentRecord]]) -> bool:
    return any(r.stats.status == MipStatus.TIME_LIMIT for runs in variants.values() for r in runs.values())


def head_to_head(
    records: Sequence[ExperimentRecord], metric: str = "nodes", variants: Optional[Sequence[str]] = None
) -> HeadToHead:
    """Win and loss shares for every ordered pair of variants.

    Variant i beats j on an instance when it is at least as good on every
    shared seed and strictly better on one. For nodes, instances where any
    variant hit the time limit are left out.
    """
    variants = tuple(variants) if variants is not None else _variants(records)
    k = len(variants)
    wins = np.zeros((k, k))
    compared = np.zeros((k, k))
    for instance, runs in _by_instance(records).items():
        if metric == "nodes" and _timed_out(runs):
            logger.debug(f"{instance}: excluded from node comparison, time limit hit")
            continue
        for i, a in enumerate(variants):
            for j, b in enumerate(variants):
                if i == j or a not in runs or b not in runs:
                    continue
                seeds = sorted(set(runs[a]) & set(runs[b]))
                if not seeds:
                    continue
                va = np.array([metric_value(runs[a][s], metric) for s in seeds])
                vb = np.array([metric_value(runs[b][s], metric) for s in seeds])
                compared[i, j] += 1
                if np.all(va <= vb) and np.any(va < vb):
                    wins[i, j] += 1
    with np.errstate(invalid="ignore", divide="ignore"):
        win = np.where(compared > 0, wins / compared, 0.0)
    np.fill_diagonal(win, np.nan)
    return HeadToHead(metric=metric, variants=variants, win=win, loss=win.T.copy(), instances=compared)


def shifted_geo_mean(values: Sequence[float], shift: float = 1.0) -> float:
    """exp(mean(log(v + shift))) - shift."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("shifted geometric mean of no values")
    if np.any(values + shift <= 0):
        raise ValueError("every value plus the shift must be positive")
    return float(gmean(values + shift) - shift)


def _seed_means(records: Sequence[ExperimentRecord], metric: str) -> Dict[str, Dict[str, float]]:
    return {
        instance: {
            variant: float(np.mean([metric_value(r, metric) for r in runs.values()]))
            for variant, runs in variants.items()
        }
        for instance, variants in _by_instance(records).items()
    }


def sgm_by_variant(records: Sequence[ExperimentRecord], metric: str = "nodes", shift: float = 10.0) -> Dict[str, float]:
    """Shifted geometric mean over instances of the seed-averaged metric, per variant."""
    per_variant: Dict[str, List[float]] = defaultdict(list)
    for means in _seed_means(records, metric).values():
        for variant, value in means.items():
            per_variant[variant].append(value)
    return {v: shifted_geo_mean(per_variant[v], shift) for v in _variants(records)}


def _ratio(value: float, best: float) -> float:
    if value == best:
        return 1.0
    if best == 0.0:
        return math.inf
    return value / best


def virtual_best_ratios(
    records: Sequence[ExperimentRecord], metric: str = "gap", reciprocal: bool = False
) -> Dict[str, Dict[str, float]]:
    """Seed-averaged metric per variant divided by the instance's best variant.

    The best variant gets 1 and the others at least 1; with ``reciprocal`` the
    ratios are inverted into (0, 1], the orientation of regression targets.
    """
    out = {}
    for instance, means in _seed_means(records, metric).items():
        best = min(means.values())
        ratios = {v: _ratio(value, best) for v, value in means.items()}
        out[instance] = {v: (1.0 / r if reciprocal else r) for v, r in ratios.items()}
    return out


def density_summary(
    records: Sequence[ExperimentRecord], subsets: Sequence[float] = DENSITY_SUBSETS
) -> List[DensityRow]:
    """Density-filtered variants against unfiltered eff on nested instance subsets.

    Subset d holds the instances where the unfiltered eff run added a cut of
    relative density at least d. Infeasible instances are left out.
    """
    table = _by_instance(records)
    eff = MeasureKind.EFF.value
    filtered = [v for v in _variants(records) if parse_variant(v)[0] == MeasureKind.EFF and v != eff]
    rows = []
    for d in subsets:
        members = [
            inst for inst, runs in table.items()
            if eff in runs
            and max(r.max_relative_density for r in runs[eff].values()) >= d
            and all(r.stats.status != MipStatus.INFEASIBLE for r in runs[eff].values())
        ]
        for variant in [eff] + filtered:
            chosen = [inst for inst in members if variant in table[inst]]
            if not chosen:
                continue
            values = {}
            for metric, shift in DENSITY_SHIFTS:
                base = shifted_geo_mean(
                    [np.mean([metric_value(r, metric) for r in table[i][eff].values()]) for i in chosen], shift)
                ours = shifted_geo_mean(
                    [np.mean([metric_value(r, metric) for r in table[i][variant].values()]) for i in chosen], shift)
                values[metric] = _ratio(ours, base)
            rows.append(DensityRow(min_density=d, variant=variant, instances=len(chosen), **values))
    return rows


def center_invalidation_rate(records: Sequence[ExperimentRecord]) -> float:
    """Share of separation rounds in app-a-dcd runs where the cached center had been cut off."""
    runs = [r for r in records if r.variant == MeasureKind.APP_A_DCD.value]
    rounds = sum(r.rounds_executed for r in runs)
    if rounds == 0:
        return 0.0
    return sum(r.center_recomputations for r in runs) / rounds


def training_records(records: Sequence[ExperimentRecord]) -> List[TrainingRecord]:
    """Per (instance, seed): virtual-best nodes over each measure's nodes, in MeasureKind order.

    Pairs missing a measure or with a timed-out run are skipped.
    """
    kinds = [k.value for k in MeasureKind.ordered()]
    pairs: Dict[Tuple[str, int], Dict[str, ExperimentRecord]] = defaultdict(dict)
    for rec in records:
        if rec.variant in kinds:
            pairs[(rec.instance, rec.seed)][rec.variant] = rec
    out = []
    for (instance, seed), runs in sorted(pairs.items()):
        if len(runs) < len(kinds):
            continue
        if any(r.stats.status == MipStatus.TIME_LIMIT for r in runs.values()):
            continue
        nodes = np.array([runs[k].stats.nodes_processed for k in kinds], dtype=float)
        out.append(TrainingRecord(
            instance=instance, seed=seed, features=runs[kinds[0]].features, targets=nodes.min() / nodes,
        ))
    logger.info(f"{len(out)} training records from {len(pairs)} instance-seed pairs")
    return out


def evaluate_picker(records: Sequence[ExperimentRecord], model: RegressionModel) -> PickerSummary:
    """Node SGM (shift 10) of the model-picked measure against every fixed measure and the virtual best."""
    kinds = [k.value for k in MeasureKind.ordered()]
    samples = training_records(records)
    lookup = {(r.instance, r.seed, r.variant): r for r in records}
    picked_nodes, picks = [], defaultdict(int)
    for sample in samples:
        choice = pick_measure(model, sample.features).value
        picks[choice] += 1
        picked_nodes.append(lookup[(sample.instance, sample.seed, choice)].stats.nodes_processed)
    if not samples:
        raise ValueError("no complete instance-seed pairs to evaluate")
    sgm = {"picked": shifted_geo_mean(picked_nodes, 10.0)}
    for kind in kinds:
        sgm[kind] = shifted_geo_mean(
            [lookup[(s.instance, s.seed, kind)].stats.nodes_processed for s in samples], 10.0)
    sgm["virtual-best"] = shifted_geo_mean(
        [min(lookup[(s.instance, s.seed, k)].stats.nodes_processed for k in kinds) for s in samples], 10.0)
    return PickerSummary(pairs=len(samples), sgm_nodes=sgm, picks=dict(picks))
