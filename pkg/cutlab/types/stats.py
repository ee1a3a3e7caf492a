from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict

from cutlab.types.arrays import Matrix


class HeadToHead(BaseModel):
    """Pairwise win/loss fractions: ``win[i, j]`` is the share of instances where variant i beats j."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, ser_json_inf_nan="constants")

    metric: str
    variants: Tuple[str, ...]
    win: Matrix
    loss: Matrix
    # instances compared per pair
    instances: Matrix


class DensityRow(BaseModel):
    """Shifted geometric means of one density variant on one instance subset, relative to eff."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    min_density: float
    variant: str
    instances: int
    gap: float
    cuts: float
    rounds: float
    lp_iterations: float
    nodes: float


class PickerSummary(BaseModel):
    """Node shifted geometric mean of the model's pick against every fixed measure."""

    model_config = ConfigDict(frozen=True)

    pairs: int
    sgm_nodes: Dict[str, float]
    picks: Dict[str, int]
