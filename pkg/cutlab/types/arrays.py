"""Annotated numpy array types usable as pydantic fields.

Arrays are copied on validation and marked read-only, so models holding
them stay immutable.
"""

from typing import Annotated, Any, List

import numpy as np
from pydantic import BeforeValidator, PlainSerializer


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _as_vector(value: Any) -> np.ndarray:
    arr = np.array(value, dtype=float)
    if arr.ndim == 0:
        raise ValueError("expected a vector, got a scalar")
    if arr.ndim != 1:
        raise ValueError(f"expected a vector, got an array of shape {arr.shape}")
    return _freeze(arr)


def _as_matrix(value: Any) -> np.ndarray:
    arr = np.array(value, dtype=float)
    if arr.size == 0:
        # an empty row list carries no column count; the owner reshapes it
        return _freeze(arr.reshape(0, arr.shape[-1] if arr.ndim == 2 else 0))
    if arr.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of shape {arr.shape}")
    return _freeze(arr)


def _to_list(arr: np.ndarray) -> List[Any]:
    return arr.tolist()


Vector = Annotated[
    np.ndarray,
    BeforeValidator(_as_vector),
    PlainSerializer(_to_list, return_type=list),
]

Matrix = Annotated[
    np.ndarray,
    BeforeValidator(_as_matrix),
    PlainSerializer(_to_list, return_type=list),
]
