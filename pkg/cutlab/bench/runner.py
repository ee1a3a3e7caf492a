"""Run every (instance, variant, seed) combination of an experiment."""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Dict, List, Optional, Sequence

from cutlab.bench.store import ResultStore
from cutlab.bnb import branch_and_cut_run, reference_incumbent
from cutlab.config import LabSettings
from cutlab.measures import parse_variant
from cutlab.types.instance import Incumbent, MipInstance
from cutlab.types.learning import FeatureVector
from cutlab.types.records import ExperimentRecord, SeparationConfig
from cutlab.validate import validate_seeds, validate_variants

logger = logging.getLogger(__name__)

_EMPTY_FEATURES = FeatureVector(
    dual_degeneracy=0.0, primal_degeneracy=0.0, fractionality=0.0, thinness=0.0, density=0.0
)


def run_one(
    inst: MipInstance,
    variant: str,
    seed: int,
    cfg: SeparationConfig,
    time_limit: Optional[float],
    settings: LabSettings,
    incumbent: Optional[Incumbent] = None,
) -> ExperimentRecord:
    """Branch-and-cut on ``inst`` with the measure and density filter named by ``variant``."""
    kind, threshold = parse_variant(variant)
    run_cfg = cfg.model_copy(update={"measure": kind, "density_threshold": threshold, "seed": seed})
    run = branch_and_cut_run(inst, run_cfg, time_limit, incumbent, settings)
    sep = run.separation
    if sep is None:
        logger.warning(f"{inst.name}: root infeasible, recording empty features")
    return ExperimentRecord(
        instance=inst.name,
        seed=seed,
        variant=variant,
        stats=run.stats,
        features=sep.features if sep is not None else _EMPTY_FEATURES,
        cuts_added=len(sep.cuts) if sep is not None else 0,
        rounds_executed=len(sep.reports) if sep is not None else 0,
        max_relative_density=sep.max_relative_density if sep is not None else 0.0,
        center_recomputations=sep.center_recomputations if sep is not None else 0,
        infeasible_projections=sum(r.infeasible_projections for r in sep.reports) if sep is not None else 0,
    )


def run_matrix(
    corpus: Sequence[MipInstance],
    variants: Sequence[str],
    seeds: Sequence[int] = (1, 2, 3),
    cfg: Optional[SeparationConfig] = None,
    time_limit: Optional[float] = None,
    jobs: int = 1,
    store: Optional[ResultStore] = None,
    settings: Optional[LabSettings] = None,
    provide_incumbent: bool = True,
) -> List[ExperimentRecord]:
    """All records of the cross product, sorted by (instance, seed, variant).

    Records already in ``store`` are not rerun; new ones are appended to it as
    they finish. With ``provide_incumbent`` every run starts from the optimum
    found by plain branch-and-bound.
    """
    variants = validate_variants(variants)
    seeds = validate_seeds(seeds)
    cfg = cfg or SeparationConfig()
    settings = settings or LabSettings()
    names = [inst.name for inst in corpus]
    if len(set(names)) != len(names):
        raise ValueError("corpus instance names must be unique")

    done: Dict[tuple, ExperimentRecord] = {}
    if store is not None:
        wanted = set(names)
        done = {r.key: r for r in store.load() if r.instance in wanted}
    todo = [
        (inst, variant, seed)
        for inst in corpus for seed in seeds for variant in variants
        if (inst.name, seed, variant) not in done
    ]
    logger.info(f"{len(todo)} runs to do, {len(done)} already stored")

    pending = {inst.name: inst for inst, _, _ in todo}
    incumbents: Dict[str, Optional[Incumbent]] = {name: None for name in pending}
    results: List[ExperimentRecord] = []

    def finish(record: ExperimentRecord) -> None:
        results.append(record)
        if store is not None:
            store.append(record)

    if jobs <= 1:
        if provide_incumbent:
            incumbents = {name: reference_incumbent(inst, settings) for name, inst in pending.items()}
        for inst, variant, seed in todo:
            finish(run_one(inst, variant, seed, cfg, time_limit, settings, incumbents[inst.name]))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            if provide_incumbent:
                futures = {pool.submit(reference_incumbent, inst, settings): name for name, inst in pending.items()}
                for future in as_completed(futures):
                    incumbents[futures[future]] = future.result()
            futures = [
                pool.submit(run_one, inst, variant, seed, cfg, time_limit, settings, incumbents[inst.name])
                for inst, variant, seed in todo
            ]
            for future in as_completed(futures):
                finish(future.result())

    records = list(done.values()) + results
    records.sort(key=lambda r: r.key)
    return records
