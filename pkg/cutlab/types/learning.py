from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from cutlab.types.arrays import Matrix, Vector

FEATURE_NAMES = ("dual_degeneracy", "primal_degeneracy", "fractionality", "thinness", "density")


class FeatureVector(BaseModel):
    """Root-node instance features, each a fraction in [0, 1]."""

    model_config = ConfigDict(frozen=True)

    dual_degeneracy: float = Field(ge=0.0, le=1.0)
    primal_degeneracy: float = Field(ge=0.0, le=1.0)
    fractionality: float = Field(ge=0.0, le=1.0)
    thinness: float = Field(ge=0.0, le=1.0)
    density: float = Field(ge=0.0, le=1.0)

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES], dtype=float)

    @classmethod
    def from_array(cls, values) -> "FeatureVector":
        values = np.asarray(values, dtype=float)
        if values.shape != (len(FEATURE_NAMES),):
            raise ValueError(f"expected {len(FEATURE_NAMES)} feature values, got shape {values.shape}")
        return cls(**{name: float(v) for name, v in zip(FEATURE_NAMES, values)})

    def csv_row(self, instance: str, seed: int) -> List[str]:
        """instance,seed,dual_deg,primal_deg,frac,thin,density"""
        return [instance, str(seed)] + [repr(float(v)) for v in self.as_array()]


class TrainingRecord(BaseModel):
    """Features of one (instance, seed) pair with per-measure relative node performance."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    instance: str = ""
    seed: int = 0
    features: FeatureVector
    targets: Vector

    @field_validator("targets")
    @classmethod
    def _check_targets(cls, value: np.ndarray) -> np.ndarray:
        if value.shape != (8,):
            raise ValueError(f"expected 8 targets, got shape {value.shape}")
        if np.any(value <= 0.0) or np.any(value > 1.0 + 1e-12):
            raise ValueError("targets must lie in (0, 1]")
        if not np.isclose(value.max(), 1.0):
            raise ValueError("at least one target must equal 1 (the virtual best)")
        return value


class CrossValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    folds: int
    mse_per_output: Tuple[float, ...]


class RegressionModel(BaseModel):
    """Kernel ridge regressor with the cubic polynomial kernel (gamma * x.y + coef0) ** degree."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    degree: int = 3
    gamma: float
    coef0: float = 1.0
    ridge: float
    means: Vector
    stds: Vector
    # standardized training inputs, one row per record
    train_inputs: Matrix
    # one column per output, in MeasureKind order
    dual_coef: Matrix
    cv: Optional[CrossValidationReport] = None


class PcaProjection(BaseModel):
    """First two principal components of the standardized features."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    components: Matrix
    points: Matrix
    explained_variance_ratio: Vector
    means: Vector
    stds: Vector


class DecisionCell(BaseModel):
    model_config = ConfigDict(frozen=True)

    pc1: float
    pc2: float
    measure: str
    confidence: float
