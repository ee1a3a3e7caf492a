from cutlab.regress.corpus import read_training_csv, write_training_csv
from cutlab.regress.kernel import (
    load_model,
    pick_from_predictions,
    pick_measure,
    predict,
    predict_many,
    save_model,
    train,
)
from cutlab.regress.pca import pca_from_matrix, pca_project, to_feature_space
from cutlab.regress.regions import export_decision_regions, write_regions_csv

__all__ = [
    "export_decision_regions",
    "load_model",
    "pca_from_matrix",
    "pca_project",
    "pick_from_predictions",
    "pick_measure",
    "predict",
    "predict_many",
    "read_training_csv",
    "save_model",
    "to_feature_space",
    "train",
    "write_regions_csv",
    "write_training_csv",
]
