"""Kernel ridge regression from root features to per-measure relative performance."""

import json
import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import scipy.linalg
from sklearn.metrics.pairwise import polynomial_kernel
from sklearn.model_selection import KFold
from sklearn.preprocessing import StandardScaler

from cutlab.errors import SingularSystemError
from cutlab.types.learning import (
    FEATURE_NAMES,
    CrossValidationReport,
    FeatureVector,
    RegressionModel,
    TrainingRecord,
)
from cutlab.types.measures import MeasureKind

logger = logging.getLogger(__name__)

DEGREE = 3
COEF0 = 1.0
DEFAULT_RIDGE = 1e-2
CV_FOLDS = 5
MIN_RECORDS = 8

FeatureLike = Union[FeatureVector, Sequence[float], np.ndarray]


def _kernel(X: np.ndarray, Y: np.ndarray, gamma: float, coef0: float = COEF0, degree: int = DEGREE) -> np.ndarray:
    return polynomial_kernel(X, Y, degree=degree, gamma=gamma, coef0=coef0)


def _fit(Z: np.ndarray, T: np.ndarray, ridge: float, gamma: float) -> np.ndarray:
    """Dual coefficients solving (K + ridge I) a = t for every target column."""
    if ridge == 0.0 and np.unique(Z, axis=0).shape[0] < Z.shape[0]:
        raise SingularSystemError("duplicate training rows make the kernel system singular; use ridge > 0")
    K = _kernel(Z, Z, gamma) + ridge * np.eye(Z.shape[0])
    try:
        coef = scipy.linalg.solve(K, T, assume_a="sym")
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"kernel system is singular ({exc}); use ridge > 0") from None
    if not np.isfinite(coef).all():
        raise SingularSystemError("kernel system produced non-finite coefficients; use ridge > 0")
    return coef


def _design(records: Sequence[TrainingRecord]):
    X = np.array([r.features.as_array() for r in records])
    T = np.array([r.targets for r in records])
    return X, T


def train(
    records: Sequence[TrainingRecord],
    ridge: float = DEFAULT_RIDGE,
    seed: int = 0,
    gamma: Optional[float] = None,
) -> RegressionModel:
    """Fit one kernel ridge regressor per measure on standardized features.

    The kernel is (gamma * x.y + 1) ** 3 with gamma = 1 / #features unless
    given. A 5-fold cross-validation MSE per output is attached to the model.

    Raises:
        ValueError: fewer than 8 records or a negative ridge.
        SingularSystemError: the kernel system cannot be solved.
    """
    if len(records) < MIN_RECORDS:
        raise ValueError(f"need at least {MIN_RECORDS} training records, got {len(records)}")
    if ridge < 0:
        raise ValueError("ridge must be non-negative")
    gamma = 1.0 / len(FEATURE_NAMES) if gamma is None else gamma
    X, T = _design(records)

    scaler = StandardScaler().fit(X)
    Z = scaler.transform(X)
    coef = _fit(Z, T, ridge, gamma)

    errors = np.zeros((CV_FOLDS, T.shape[1]))
    for k, (fit_idx, test_idx) in enumerate(KFold(CV_FOLDS, shuffle=True, random_state=seed).split(X)):
        fold_scaler = StandardScaler().fit(X[fit_idx])
        Zf = fold_scaler.transform(X[fit_idx])
        Zt = fold_scaler.transform(X[test_idx])
        fold_coef = _fit(Zf, T[fit_idx], ridge, gamma)
        errors[k] = np.mean((_kernel(Zt, Zf, gamma) @ fold_coef - T[test_idx]) ** 2, axis=0)
    cv = CrossValidationReport(folds=CV_FOLDS, mse_per_output=tuple(float(v) for v in errors.mean(axis=0)))
    logger.info(f"trained on {len(records)} records, mean CV MSE {errors.mean():.4g}")

    return RegressionModel(
        degree=DEGREE,
        gamma=gamma,
        coef0=COEF0,
        ridge=ridge,
        means=scaler.mean_,
        stds=scaler.scale_,
        train_inputs=Z,
        dual_coef=coef,
        cv=cv,
    )


def _as_rows(features) -> np.ndarray:
    if isinstance(features, FeatureVector):
        return features.as_array()[None, :]
    if isinstance(features, (list, tuple)) and features and isinstance(features[0], FeatureVector):
        return np.array([f.as_array() for f in features])
    return np.atleast_2d(np.asarray(features, dtype=float))


def predict_many(model: RegressionModel, features) -> np.ndarray:
    """Predictions for several feature rows, one column per measure."""
    X = _as_rows(features)
    if X.shape[1] != model.means.shape[0]:
        raise ValueError(f"expected {model.means.shape[0]} features per row, got {X.shape[1]}")
    Z = (X - model.means) / model.stds
    return _kernel(Z, model.train_inputs, model.gamma, model.coef0, model.degree) @ model.dual_coef


def predict(model: RegressionModel, features: FeatureLike) -> np.ndarray:
    """Predicted relative performance per measure, in MeasureKind order."""
    return predict_many(model, features)[0]


def pick_from_predictions(predictions: np.ndarray) -> MeasureKind:
    # argmax keeps the first maximiser, i.e. declaration order on ties
    return MeasureKind.ordered()[int(np.argmax(predictions))]


def pick_measure(model: RegressionModel, features: FeatureLike) -> MeasureKind:
    return pick_from_predictions(predict(model, features))


def save_model(model: RegressionModel, path: Union[str, Path]) -> None:
    with open(path, "w") as handle:
        handle.write(model.model_dump_json(indent=2))
        handle.write("\n")


def load_model(path: Union[str, Path]) -> RegressionModel:
    with open(path, "r") as handle:
        return RegressionModel.model_validate(json.load(handle))
