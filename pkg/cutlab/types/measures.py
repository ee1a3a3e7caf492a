from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict

from cutlab.types.arrays import Vector
from cutlab.types.instance import Incumbent
from cutlab.types.solution import CenterPoint, OptimaSet


class MeasureKind(str, Enum):
    """Cut scoring functions. Declaration order is the canonical output order."""

    EFF = "eff"
    DCD = "dcd"
    EXP_IMPROV = "exp-improv"
    A_EFF = "a-eff"
    A_DCD = "a-dcd"
    APP_A_DCD = "app-a-dcd"
    AVGEFF = "avgeff"
    MINEFF = "mineff"

    @classmethod
    def ordered(cls) -> tuple:
        return tuple(cls)


class ScoringContext(BaseModel):
    """Reference data a measure needs to score cuts in one separation round."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x_lp: Vector
    objective: Optional[Vector] = None
    incumbent: Optional[Incumbent] = None
    x_face: Optional[CenterPoint] = None
    x_center: Optional[CenterPoint] = None
    cached_center: Optional[CenterPoint] = None
    # True only if cached_center is LP-feasible under the current cuts
    cache_valid: bool = False
    optima: Optional[OptimaSet] = None
