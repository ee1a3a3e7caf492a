"""Decision regions of a trained model over the plane of the first two principal components."""

import csv
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from cutlab.regress.kernel import pick_from_predictions, predict_many
from cutlab.regress.pca import pca_from_matrix, to_feature_space
from cutlab.types.learning import DecisionCell, PcaProjection, RegressionModel

logger = logging.getLogger(__name__)

# grid extends this fraction of the projected range beyond the data
GRID_PADDING = 0.1
REGION_HEADER = ("pc1", "pc2", "measure", "confidence")


def training_features(model: RegressionModel) -> np.ndarray:
    """The model's training inputs in original feature units."""
    return model.train_inputs * model.stds + model.means


def _axis(values: np.ndarray, resolution: int) -> np.ndarray:
    lo, hi = float(values.min()), float(values.max())
    pad = GRID_PADDING * (hi - lo) if hi > lo else 1.0
    return np.linspace(lo - pad, hi + pad, resolution)


def export_decision_regions(
    model: RegressionModel,
    grid_resolution: int = 50,
    projection: Optional[PcaProjection] = None,
) -> List[DecisionCell]:
    """Recommended measure on a ``grid_resolution`` x ``grid_resolution`` PC grid.

    ``confidence`` is the margin between the best and the runner-up prediction.
    The projection defaults to the PCA of the model's own training features.
    """
    if grid_resolution < 1:
        raise ValueError("grid resolution must be positive")
    projection = projection or pca_from_matrix(training_features(model))
    xs = _axis(projection.points[:, 0], grid_resolution)
    ys = _axis(projection.points[:, 1], grid_resolution)
    pcs = np.array([(x, y) for x in xs for y in ys])
    preds = predict_many(model, to_feature_space(projection, pcs))
    top2 = np.sort(preds, axis=1)[:, -2:]
    cells = [
        DecisionCell(
            pc1=float(pc[0]),
            pc2=float(pc[1]),
            measure=pick_from_predictions(pred).value,
            confidence=float(best[1] - best[0]),
        )
        for pc, pred, best in zip(pcs, preds, top2)
    ]
    logger.info(f"decision regions: {len(cells)} cells, {len({c.measure for c in cells})} measures")
    return cells


def write_regions_csv(cells: Sequence[DecisionCell], path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(REGION_HEADER)
        for cell in cells:
            writer.writerow([repr(cell.pc1), repr(cell.pc2), cell.measure, repr(cell.confidence)])
