"""CSV form of the training corpus: instance, seed, five features, eight targets."""

import csv
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from cutlab.errors import InstanceFormatError
from cutlab.features import CSV_HEADER
from cutlab.types.learning import FEATURE_NAMES, FeatureVector, TrainingRecord
from cutlab.types.measures import MeasureKind

TARGET_COLUMNS = tuple(f"target_{kind.value}" for kind in MeasureKind.ordered())
TRAINING_HEADER = tuple(CSV_HEADER) + TARGET_COLUMNS


def write_training_csv(records: Sequence[TrainingRecord], path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(TRAINING_HEADER)
        for rec in records:
            writer.writerow(rec.features.csv_row(rec.instance, rec.seed) + [repr(float(t)) for t in rec.targets])


def read_training_csv(path: Union[str, Path]) -> List[TrainingRecord]:
    width = 2 + len(FEATURE_NAMES) + len(TARGET_COLUMNS)
    records = []
    with open(path, "r", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != TRAINING_HEADER:
            raise InstanceFormatError(f"{path}: unexpected header {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != width:
                raise InstanceFormatError(f"{path}:{lineno}: expected {width} columns, got {len(row)}")
            try:
                values = np.array(row[2:], dtype=float)
                records.append(TrainingRecord(
                    instance=row[0],
                    seed=int(row[1]),
                    features=FeatureVector.from_array(values[: len(FEATURE_NAMES)]),
                    targets=values[len(FEATURE_NAMES):],
                ))
            except ValueError as exc:
                raise InstanceFormatError(f"{path}:{lineno}: {exc}") from None
    return records
