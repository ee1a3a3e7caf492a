from cutlab.bench.corpus import CorpusKind, CorpusSize, gen_corpus, load_corpus, write_corpus
from cutlab.bench.runner import run_matrix, run_one
from cutlab.bench.stats import (
    center_invalidation_rate,
    density_summary,
    evaluate_picker,
    head_to_head,
    metric_value,
    sgm_by_variant,
    shifted_geo_mean,
    training_records,
    virtual_best_ratios,
)
from cutlab.bench.store import ResultStore

__all__ = [
    "CorpusKind",
    "CorpusSize",
    "ResultStore",
    "center_invalidation_rate",
    "density_summary",
    "evaluate_picker",
    "gen_corpus",
    "head_to_head",
    "load_corpus",
    "metric_value",
    "run_matrix",
    "run_one",
    "sgm_by_variant",
    "shifted_geo_mean",
    "training_records",
    "virtual_best_ratios",
    "write_corpus",
]
