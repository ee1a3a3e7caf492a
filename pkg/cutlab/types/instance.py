from enum import Enum
from functools import cached_property
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator, model_validator

from cutlab.types.arrays import Matrix, Vector

# Magnitude at or beyond which a bound is treated as infinite.
INFINITE_BOUND = 1e20


class RowKind(str, Enum):
    """Sense of a constraint row."""

    LE = "LE"
    EQ = "EQ"


class CutOrigin(str, Enum):
    """Where a cut came from."""

    GOMORY = "gomory"
    USER = "user"
    TEST = "test"


def _bound_array(value: Any, sign: float) -> Any:
    if value is None:
        return value
    out = []
    for entry in value:
        if entry is None:
            out.append(sign * np.inf)
        elif isinstance(entry, str):
            out.append(float(entry))
        else:
            out.append(entry)
    arr = np.array(out, dtype=float)
    arr[arr >= INFINITE_BOUND] = np.inf
    arr[arr <= -INFINITE_BOUND] = -np.inf
    return arr


def _sentinel(arr: np.ndarray) -> list:
    return [
        INFINITE_BOUND if v == np.inf else -INFINITE_BOUND if v == -np.inf else float(v)
        for v in arr
    ]


class MipInstance(BaseModel):
    """min c.x  s.t.  Ax <= b (EQ rows tagged),  l <= x <= u,  x_J integer."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = "unnamed"
    objective: Vector
    rows: Matrix
    rhs: Vector
    lower: Vector
    upper: Vector
    integer: Tuple[int, ...] = ()
    row_kind: Tuple[RowKind, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        n_decl = data.pop("n", None)
        m_decl = data.pop("m", None)
        objective = data.get("objective")
        n = len(objective) if objective is not None else 0
        if n_decl is not None and n_decl != n:
            raise ValueError(f"declared n={n_decl} but objective has {n} entries")
        rows = data.get("rows")
        if rows is None or len(rows) == 0:
            data["rows"] = np.zeros((0, n))
        rhs = data.get("rhs")
        if rhs is None or len(rhs) == 0:
            data["rhs"] = np.zeros(0)
        m = len(data["rows"])
        if m_decl is not None and m_decl != m:
            raise ValueError(f"declared m={m_decl} but {m} rows were given")
        data["lower"] = _bound_array(data.get("lower", [0.0] * n), -1.0)
        data["upper"] = _bound_array(data.get("upper", [None] * n), 1.0)
        if not data.get("row_kind"):
            data["row_kind"] = tuple(RowKind.LE for _ in range(m))
        return data

    @field_validator("integer", mode="before")
    @classmethod
    def _sorted_indices(cls, value: Any) -> Any:
        if value is None:
            return ()
        return tuple(sorted({int(j) for j in value}))

    @model_validator(mode="after")
    def _check_dimensions(self) -> "MipInstance":
        n = self.objective.shape[0]
        m = self.rows.shape[0]
        if self.rows.shape[1] != n:
            raise ValueError(f"rows have {self.rows.shape[1]} columns, expected {n}")
        if self.rhs.shape[0] != m:
            raise ValueError(f"rhs has {self.rhs.shape[0]} entries, expected {m}")
        if self.lower.shape[0] != n or self.upper.shape[0] != n:
            raise ValueError("bound vectors must have length n")
        if len(self.row_kind) != m:
            raise ValueError(f"row_kind has {len(self.row_kind)} tags, expected {m}")
        for label, arr in (
            ("objective", self.objective),
            ("rows", self.rows),
            ("rhs", self.rhs),
            ("lower", self.lower),
            ("upper", self.upper),
        ):
            if np.isnan(arr).any():
                raise ValueError(f"{label} contains NaN")
        for label, arr in (("objective", self.objective), ("rows", self.rows), ("rhs", self.rhs)):
            if not np.isfinite(arr).all():
                raise ValueError(f"{label} must be finite")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound")
        if np.any(self.lower == np.inf) or np.any(self.upper == -np.inf):
            raise ValueError("bounds must admit a finite value")
        if self.integer and (self.integer[0] < 0 or self.integer[-1] >= n):
            raise ValueError(f"integer indices must lie in [0, {n})")
        return self

    @field_serializer("lower", "upper")
    def _serialize_bounds(self, arr: np.ndarray) -> list:
        return _sentinel(arr)

    @property
    def n(self) -> int:
        return self.objective.shape[0]

    @property
    def m(self) -> int:
        return self.rows.shape[0]

    @cached_property
    def integer_mask(self) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[list(self.integer)] = True
        return mask

    @cached_property
    def eq_mask(self) -> np.ndarray:
        return np.array([kind == RowKind.EQ for kind in self.row_kind], dtype=bool)

    def with_bounds(self, lower: np.ndarray, upper: np.ndarray) -> "MipInstance":
        """Copy of the instance with replaced variable bounds."""
        return self.model_copy(
            update={"lower": _freeze_copy(lower), "upper": _freeze_copy(upper)}
        )

    def with_objective(self, objective: np.ndarray) -> "MipInstance":
        return self.model_copy(update={"objective": _freeze_copy(objective)})

    def inequality_form(self, extra_rows: Optional[np.ndarray] = None,
                        extra_rhs: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
        """All constraints as G x <= h: LE rows, EQ rows as LE pairs, finite bounds."""
        blocks = [self.rows[~self.eq_mask], self.rows[self.eq_mask], -self.rows[self.eq_mask]]
        rhs = [self.rhs[~self.eq_mask], self.rhs[self.eq_mask], -self.rhs[self.eq_mask]]
        if extra_rows is not None and len(extra_rows):
            blocks.append(np.atleast_2d(extra_rows))
            rhs.append(np.asarray(extra_rhs, dtype=float))
        eye = np.eye(self.n)
        up = np.isfinite(self.upper)
        lo = np.isfinite(self.lower)
        blocks.extend([eye[up], -eye[lo]])
        rhs.extend([self.upper[up], -self.lower[lo]])
        return np.vstack(blocks), np.concatenate(rhs)

    def to_json_dict(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        return {"name": data["name"], "n": self.n, "m": self.m, **{
            key: data[key]
            for key in ("objective", "rows", "rhs", "row_kind", "lower", "upper", "integer")
        }}


def _freeze_copy(arr: Any) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


class Cut(BaseModel):
    """The inequality coeffs . x <= rhs."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: Vector
    rhs: float
    origin: CutOrigin = CutOrigin.USER
    round: int = 0

    @model_validator(mode="after")
    def _check_cut(self) -> "Cut":
        if not np.isfinite(self.coeffs).all() or not np.isfinite(self.rhs):
            raise ValueError("cut entries must be finite")
        if not np.any(self.coeffs != 0.0):
            raise ValueError("cut coefficients must not all be zero")
        return self

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    @cached_property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def scaled(self, factor: float) -> "Cut":
        """The same half-space written with coefficients multiplied by ``factor`` > 0."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return Cut(coeffs=self.coeffs * factor, rhs=self.rhs * factor,
                   origin=self.origin, round=self.round)


class Incumbent(BaseModel):
    """A MIP-feasible solution."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    point: Vector
    value: float
    source: str = "provided"
