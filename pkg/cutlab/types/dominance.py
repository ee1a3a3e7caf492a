from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from cutlab.types.arrays import Vector


class DominanceRelation(str, Enum):
    A_DOMINATES_B = "ADominatesB"
    B_DOMINATES_A = "BDominatesA"
    EQUIVALENT = "Equivalent"
    INCOMPARABLE = "Incomparable"


class DominanceVerdict(BaseModel):
    """Relation between two cuts over a polytope.

    ``witness_a`` is a polytope point cut by A and not by B (when one exists),
    ``witness_b`` the converse.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    relation: DominanceRelation
    # max violation of A over points B keeps, and of B over points A keeps
    a_only: float
    b_only: float
    witness_a: Optional[Vector] = None
    witness_b: Optional[Vector] = None

    def flipped(self) -> "DominanceVerdict":
        swap = {
            DominanceRelation.A_DOMINATES_B: DominanceRelation.B_DOMINATES_A,
            DominanceRelation.B_DOMINATES_A: DominanceRelation.A_DOMINATES_B,
        }
        return DominanceVerdict(
            relation=swap.get(self.relation, self.relation),
            a_only=self.b_only,
            b_only=self.a_only,
            witness_a=self.witness_b,
            witness_b=self.witness_a,
        )


class ConsistencyViolation(BaseModel):
    """A higher-scored cut that is dominated by a lower-scored one."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    higher: int
    lower: int
    higher_score: float
    lower_score: float
    verdict: DominanceVerdict


class ConsistencyReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    measure: str
    pairs_checked: int = 0
    # pairs left out of a guarantee because its hypothesis fails
    pairs_excluded: List[Tuple[int, int]] = Field(default_factory=list)
    violations: List[ConsistencyViolation] = Field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.violations


class SuiteReport(BaseModel):
    """Aggregate of a randomized consistency suite."""

    model_config = ConfigDict(frozen=True)

    suite: str
    measures: Tuple[str, ...]
    trials: int
    instances_used: int
    pairs_checked: int
    pairs_excluded: int
    violations: int
    seed: int
