from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from cutlab.types.instance import Cut, Incumbent
from cutlab.types.learning import FeatureVector
from cutlab.types.measures import MeasureKind


class SeparationConfig(BaseModel):
    """Root cut loop parameters."""

    model_config = ConfigDict(frozen=True)

    rounds: int = Field(default=50, ge=0)
    max_cuts_per_round: int = Field(default=10, ge=1)
    measure: MeasureKind = MeasureKind.EFF
    density_threshold: Optional[float] = Field(default=None, gt=0, le=1)
    parallelism_threshold: float = Field(default=0.95, gt=0, le=1)
    k_optima: int = Field(default=3, ge=1)
    seed: int = 1


class RoundReport(BaseModel):
    """What happened in one separation round."""

    model_config = ConfigDict(frozen=True)

    round: int
    generated: int
    after_density_filter: int
    added: int
    lp_value: float
    center_recomputed: bool = False
    # cuts added whose efficacy projection of x_lp is LP-infeasible
    infeasible_projections: int = 0
    # measure actually used this round (dcd falls back to eff without incumbent)
    measure_used: MeasureKind = MeasureKind.EFF

    @model_validator(mode="after")
    def _check_counts(self) -> "RoundReport":
        if self.added > self.after_density_filter or self.after_density_filter > self.generated:
            raise ValueError("round counts must satisfy added <= filtered <= generated")
        return self


class SeparationResult(BaseModel):
    """Outcome of the root separation loop."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cuts: Tuple[Cut, ...]
    reports: Tuple[RoundReport, ...]
    features: FeatureVector
    root_value: float
    lp_iterations: int = 0
    center_recomputations: int = 0
    max_relative_density: float = 0.0


class MipStatus(str, Enum):
    OPTIMAL = "Optimal"
    TIME_LIMIT = "TimeLimit"
    INFEASIBLE = "Infeasible"


class NodeStats(BaseModel):
    """Branch-and-cut run summary (minimisation)."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    status: MipStatus
    nodes_processed: int
    lp_iterations_total: int
    solve_time: Optional[float] = None
    primal_bound: float
    dual_bound: float
    gap_after_root: float
    root_lp_value: float = float("nan")
    cuts_added: int = 0

    @property
    def nodes_per_second(self) -> Optional[float]:
        if not self.solve_time:
            return None
        return self.nodes_processed / self.solve_time

    @property
    def iterations_per_second(self) -> Optional[float]:
        if not self.solve_time:
            return None
        return self.lp_iterations_total / self.solve_time


class BruteForceResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: MipStatus
    value: float
    incumbent: Optional[Incumbent] = None
    assignments: int = 0


class ExperimentRecord(BaseModel):
    """One (instance, seed, variant) run of the bench harness."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    instance: str
    seed: int
    variant: str
    stats: NodeStats
    features: FeatureVector
    cuts_added: int
    rounds_executed: int
    max_relative_density: float = 0.0
    center_recomputations: int = 0
    infeasible_projections: int = 0

    @property
    def key(self) -> Tuple[str, int, str]:
        return (self.instance, self.seed, self.variant)
