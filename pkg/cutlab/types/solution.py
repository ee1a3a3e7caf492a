from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from cutlab.types.arrays import Vector


class LpStatus(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


class VarStatus(str, Enum):
    """Position of a variable relative to the basis."""

    BASIC = "BasicAtValue"
    AT_LOWER = "NonbasicAtLower"
    AT_UPPER = "NonbasicAtUpper"
    # nonbasic free variable held at zero
    FREE = "NonbasicFree"


class LpOutcome(BaseModel):
    """Result of one LP solve.

    ``basis`` and ``reduced_costs`` cover the structural variables;
    ``row_basis`` holds the status of each row's slack.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: LpStatus
    value: float = float("nan")
    point: Optional[Vector] = None
    basis: Tuple[VarStatus, ...] = ()
    row_basis: Tuple[VarStatus, ...] = ()
    reduced_costs: Optional[Vector] = None
    duals: Optional[Vector] = None
    iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL


class CenterKind(str, Enum):
    POLYTOPE = "PolytopeCenter"
    OPTIMAL_FACE = "OptimalFaceCenter"


class CenterPoint(BaseModel):
    """Analytic center of the LP polytope or of its optimal face."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    point: Vector
    kind: CenterKind
    newton_iters: int
    residual: float
    relaxation_slack: float
    # constraints imposed as equalities instead of barrier terms
    tight_constraints: int = 0
    min_slack: float = float("inf")
    # Newton decrements of the final iterations, oldest first
    last_decrements: Tuple[float, ...] = ()


class OptimaSet(BaseModel):
    """Distinct optimal vertices of one LP relaxation."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: Tuple[Vector, ...]
    k_requested: int
    objective_value: float

    def __len__(self) -> int:
        return len(self.points)

    def as_matrix(self) -> np.ndarray:
        return np.vstack(self.points)


class TableauRow(BaseModel):
    """One simplex tableau row: sum_j coeffs[j] * x_j = rhs.

    Columns are ordered structural variables first, then one slack per LP row
    (slack_i = b_i - A_i x). ``coeffs[basic_var]`` is 1 and every other basic
    column is 0, so the row writes the basic variable in nonbasic terms.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basic_var: int
    coeffs: Vector
    rhs: float
