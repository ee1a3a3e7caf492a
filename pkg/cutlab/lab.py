"""
cutlab facade

Groups the library into namespaces that share one settings object:

1. lab.lp - LP relaxations, analytic centers, alternative optima
2. lab.separation - Gomory cuts, cut scoring and selection, the root loop
3. lab.dominance - dominance oracle, consistency checks and suites
4. lab.bnb - branch-and-cut and the brute-force oracle
5. lab.regress - measure recommendation from root features
6. lab.bench - corpora, experiment runs and statistics
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from cutlab import bench as _bench
from cutlab import dominance as _dominance
from cutlab import regress as _regress
from cutlab.bnb import BranchAndCutRun, brute_force_optimum, branch_and_cut_run, reference_incumbent
from cutlab.config import LabSettings
from cutlab.lp import analytic_center, collect_optima, optimal_face_center, solve_lp, solve_lp_with_state
from cutlab.measures import score
from cutlab.separation import generate_gomory, run_separation, select_cuts
from cutlab.types import (
    BruteForceResult,
    CenterPoint,
    ConsistencyReport,
    Cut,
    DecisionCell,
    DominanceVerdict,
    ExperimentRecord,
    FeatureVector,
    Incumbent,
    LpOutcome,
    MeasureKind,
    MipInstance,
    OptimaSet,
    PcaProjection,
    RegressionModel,
    ScoringContext,
    SeparationConfig,
    SeparationResult,
    SuiteReport,
    TrainingRecord,
)

logger = logging.getLogger(__name__)

# ----- Base Namespace Class -----


class BaseNamespace:
    """Base class for all lab namespaces."""

    def __init__(self, lab: "CutLab"):
        self.lab = lab
        self.settings = lab.settings
        self.tol = lab.settings.tolerances


# ----- LP Namespace -----
class LpNamespace(BaseNamespace):
    """LP relaxations and the points derived from them."""

    def solve(
        self, inst: MipInstance, cuts: Sequence[Cut] = (), objective: Optional[np.ndarray] = None, seed: int = 0
    ) -> LpOutcome:
        return solve_lp(
            inst, cuts, objective, pivot_seed=seed, tol=self.tol,
            refactor_every=self.settings.refactor_every, stall_limit=self.settings.stall_limit,
        )

    def analytic_center(self, inst: MipInstance, cuts: Sequence[Cut] = ()) -> CenterPoint:
        return analytic_center(inst, cuts, self.tol, self.settings.max_newton)

    def optimal_face_center(
        self, inst: MipInstance, cuts: Sequence[Cut] = (), lp: Optional[LpOutcome] = None
    ) -> CenterPoint:
        lp = lp or self.solve(inst, cuts)
        return optimal_face_center(inst, cuts, lp, self.tol, self.settings.max_newton)

    def optima(self, inst: MipInstance, cuts: Sequence[Cut] = (), k: Optional[int] = None, seed: int = 1) -> OptimaSet:
        return collect_optima(inst, cuts, k or self.settings.k_optima, seed, self.tol)


# ----- Separation Namespace -----
class SeparationNamespace(BaseNamespace):
    """Cut generation, scoring and the root separation loop."""

    def config(self, **overrides) -> SeparationConfig:
        """A SeparationConfig seeded from the lab settings."""
        fields = {
            "rounds": self.settings.rounds,
            "max_cuts_per_round": self.settings.max_cuts,
            "parallelism_threshold": self.settings.parallelism,
            "k_optima": self.settings.k_optima,
        }
        fields.update(overrides)
        return SeparationConfig(**fields)

    def gomory(self, inst: MipInstance, cuts: Sequence[Cut] = (), seed: int = 0) -> List[Cut]:
        """Gomory cuts from the optimal tableau of the LP with ``cuts`` added."""
        lp, state = solve_lp_with_state(inst, cuts, pivot_seed=seed, tol=self.tol)
        return generate_gomory(inst, cuts, lp, state, self.tol)

    def score(self, kind: MeasureKind, cut: Cut, ctx: ScoringContext) -> float:
        return score(kind, cut, ctx, self.tol)

    def select(self, cands: Sequence[Cut], ctx: ScoringContext, cfg: Optional[SeparationConfig] = None) -> List[Cut]:
        return select_cuts(cands, ctx, cfg or self.config(), self.tol)

    def run(
        self, inst: MipInstance, cfg: Optional[SeparationConfig] = None, incumbent: Optional[Incumbent] = None
    ) -> SeparationResult:
        return run_separation(inst, cfg or self.config(), incumbent, self.settings)


# ----- Dominance Namespace -----
class DominanceNamespace(BaseNamespace):
    """Dominance between cuts and the consistency of measures."""

    _SUITES = {
        "euclidean": _dominance.euclidean_suite,
        "directed": _dominance.directed_suite,
        "mineff": _dominance.mineff_suite,
    }
    _COUNTEREXAMPLES = {
        "exp-improv": _dominance.build_exp_improv_counterexample,
        "projection": _dominance.build_infeasible_projection_counterexample,
    }

    def check(self, inst: MipInstance, cut_a: Cut, cut_b: Cut, cuts_in_lp: Sequence[Cut] = ()) -> DominanceVerdict:
        return _dominance.check_dominance(inst, cuts_in_lp, cut_a, cut_b, self.tol)

    def consistency(
        self, inst: MipInstance, cut_set: Sequence[Cut], measure, ctx: Optional[ScoringContext] = None,
        cuts_in_lp: Sequence[Cut] = (),
    ) -> ConsistencyReport:
        return _dominance.check_consistency(inst, cuts_in_lp, cut_set, measure, ctx, self.tol)

    def mineff_consistency(
        self, inst: MipInstance, cut_set: Sequence[Cut], optima: OptimaSet, cuts_in_lp: Sequence[Cut] = ()
    ) -> ConsistencyReport:
        return _dominance.check_mineff_consistency(inst, cuts_in_lp, cut_set, optima, self.tol)

    def suite(self, name: str, trials: int = 1000, seed: int = 0) -> SuiteReport:
        if name not in self._SUITES:
            raise ValueError(f"Unknown suite '{name}'. Valid suites are: {', '.join(self._SUITES)}")
        return self._SUITES[name](trials=trials, seed=seed, tol=self.tol)

    def counterexample(self, name: str) -> _dominance.Counterexample:
        if name not in self._COUNTEREXAMPLES:
            raise ValueError(
                f"Unknown counterexample '{name}'. Valid counterexamples are: {', '.join(self._COUNTEREXAMPLES)}"
            )
        return self._COUNTEREXAMPLES[name]()

    def counterexample_report(
        self, example: _dominance.Counterexample, measure: Optional[MeasureKind] = None
    ) -> ConsistencyReport:
        return _dominance.counterexample_report(example, measure, self.tol)


# ----- Branch-and-Bound Namespace -----
class BnbNamespace(BaseNamespace):
    """Tree search over the cut-strengthened root."""

    def solve(
        self,
        inst: MipInstance,
        cfg: Optional[SeparationConfig] = None,
        time_limit: Optional[float] = None,
        incumbent: Optional[Incumbent] = None,
    ) -> BranchAndCutRun:
        cfg = cfg or self.lab.separation.config()
        return branch_and_cut_run(inst, cfg, time_limit, incumbent, self.settings)

    def brute_force(self, inst: MipInstance) -> BruteForceResult:
        return brute_force_optimum(inst, self.settings)

    def reference_incumbent(self, inst: MipInstance) -> Optional[Incumbent]:
        return reference_incumbent(inst, self.settings)


# ----- Regression Namespace -----
class RegressNamespace(BaseNamespace):
    """Training and using the measure recommender."""

    def train(self, records: Sequence[TrainingRecord], ridge: float = 1e-2, seed: int = 0,
              gamma: Optional[float] = None) -> RegressionModel:
        return _regress.train(records, ridge, seed, gamma)

    def predict(self, model: RegressionModel, features: FeatureVector) -> np.ndarray:
        return _regress.predict(model, features)

    def pick(self, model: RegressionModel, features: FeatureVector) -> MeasureKind:
        return _regress.pick_measure(model, features)

    def pca(self, samples: Sequence[Union[TrainingRecord, FeatureVector]]) -> PcaProjection:
        return _regress.pca_project(samples)

    def regions(self, model: RegressionModel, grid_resolution: int = 50) -> List[DecisionCell]:
        return _regress.export_decision_regions(model, grid_resolution)

    def read_training(self, path: Union[str, Path]) -> List[TrainingRecord]:
        return _regress.read_training_csv(path)

    def write_regions(self, cells: Sequence[DecisionCell], path: Union[str, Path]) -> None:
        _regress.write_regions_csv(cells, path)

    def save(self, model: RegressionModel, path: Union[str, Path]) -> None:
        _regress.save_model(model, path)

    def load(self, path: Union[str, Path]) -> RegressionModel:
        return _regress.load_model(path)


# ----- Bench Namespace -----
class BenchNamespace(BaseNamespace):
    """Experiment corpora, runs and their statistics."""

    def corpus(self, kind: str, count: int, seed: int = 0, size: Optional[_bench.CorpusSize] = None
               ) -> List[MipInstance]:
        return _bench.gen_corpus(kind, count, size, seed)

    def write_corpus(self, corpus: Sequence[MipInstance], directory: Union[str, Path]) -> List[Path]:
        return _bench.write_corpus(list(corpus), directory)

    def load_corpus(self, directory: Union[str, Path]) -> List[MipInstance]:
        return _bench.load_corpus(directory)

    def run(
        self,
        corpus: Sequence[MipInstance],
        variants: Sequence[str],
        seeds: Optional[Sequence[int]] = None,
        jobs: int = 1,
        out: Optional[Union[str, Path]] = None,
        time_limit: Optional[float] = None,
        cfg: Optional[SeparationConfig] = None,
    ) -> List[ExperimentRecord]:
        store = _bench.ResultStore(out) if out is not None else None
        return _bench.run_matrix(
            corpus, variants, seeds or self.settings.seeds, cfg or self.lab.separation.config(),
            time_limit, jobs, store, self.settings,
        )

    def load(self, path: Union[str, Path]) -> List[ExperimentRecord]:
        return sorted(_bench.ResultStore(path).load(), key=lambda r: r.key)

    def head_to_head(self, records: Sequence[ExperimentRecord], metric: str = "nodes"):
        return _bench.head_to_head(records, metric)

    def sgm(self, records: Sequence[ExperimentRecord], metric: str = "nodes", shift: float = 10.0) -> Dict[str, float]:
        return _bench.sgm_by_variant(records, metric, shift)

    def virtual_best(self, records: Sequence[ExperimentRecord], metric: str = "gap", reciprocal: bool = False):
        return _bench.virtual_best_ratios(records, metric, reciprocal)

    def density(self, records: Sequence[ExperimentRecord]):
        return _bench.density_summary(records)

    def center_invalidation_rate(self, records: Sequence[ExperimentRecord]) -> float:
        return _bench.center_invalidation_rate(records)

    def training_records(self, records: Sequence[ExperimentRecord]) -> List[TrainingRecord]:
        return _bench.training_records(records)

    def evaluate_picker(self, records: Sequence[ExperimentRecord], model: RegressionModel):
        return _bench.evaluate_picker(records, model)

    def export_training(self, records: Sequence[ExperimentRecord], path: Union[str, Path]) -> List[TrainingRecord]:
        """Write the regression corpus derived from ``records`` as CSV."""
        samples = self.training_records(records)
        _regress.write_training_csv(samples, path)
        return samples


class CutLab:
    """Desk-scale branch-and-cut laboratory.

    Access functionality through namespaces:
    - lab.lp.solve(inst) - solve an LP relaxation
    - lab.separation.run(inst, cfg) - run the root separation loop
    - lab.dominance.check(inst, cut_a, cut_b) - compare two cuts
    - lab.bnb.solve(inst, cfg) - branch-and-cut with root cuts
    - lab.regress.train(records) - fit the measure recommender
    - lab.bench.run(corpus, variants) - run an experiment matrix
    """

    def __init__(self, settings: Optional[LabSettings] = None):
        """
        Initialize the lab.

        Args:
            settings: Tolerances and run defaults; ``LabSettings()`` when omitted.
                Use ``LabSettings.from_env()`` to read ``CUTLAB_*`` variables.
        """
        self.settings = settings or LabSettings()

        # Initialize namespaces
        self.lp = LpNamespace(self)
        self.separation = SeparationNamespace(self)
        self.dominance = DominanceNamespace(self)
        self.bnb = BnbNamespace(self)
        self.regress = RegressNamespace(self)
        self.bench = BenchNamespace(self)
