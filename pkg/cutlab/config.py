"""Tolerances and run defaults, optionally overridden from the environment."""

import os
from typing import Any, Dict, Optional, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator


class Tolerances(BaseModel):
    """Numerical tolerances shared by every module."""

    model_config = ConfigDict(frozen=True)

    feas_tol: float = Field(default=1e-6, gt=0)
    int_tol: float = Field(default=1e-6, gt=0, lt=0.5)
    zero_tol: float = Field(default=1e-9, gt=0)
    opt_tol: float = Field(default=1e-7, gt=0)
    center_tol: float = Field(default=1e-8, gt=0)


DEFAULT_TOLERANCES = Tolerances()


class LabSettings(BaseModel):
    """Configuration for a laboratory session."""

    model_config = ConfigDict(frozen=True)

    tolerances: Tolerances = DEFAULT_TOLERANCES
    rounds: int = Field(default=50, ge=0)
    max_cuts: int = Field(default=10, ge=1)
    parallelism: float = Field(default=0.95, gt=0, le=1)
    k_optima: int = Field(default=3, ge=1)
    seeds: Tuple[int, ...] = (1, 2, 3)
    refactor_every: int = Field(default=50, ge=1)
    stall_limit: int = Field(default=50, ge=1)
    max_newton: int = Field(default=200, ge=1)
    record_wall_time: bool = False
    log_level: str = "WARNING"

    @field_validator("log_level", mode="before")
    @classmethod
    def _normalize_level(cls, value: Any) -> str:
        if not isinstance(value, str):
            raise TypeError("log_level must be a string")
        return value.strip().upper()

    @field_validator("seeds", mode="before")
    @classmethod
    def _parse_seeds(cls, value: Any) -> Any:
        if isinstance(value, str):
            return tuple(int(part) for part in value.split(",") if part.strip())
        return value

    @classmethod
    def from_env(cls, dotenv_path: Optional[str] = None) -> "LabSettings":
        """Build settings from ``CUTLAB_*`` environment variables (and a .env file)."""
        load_dotenv(dotenv_path)

        tolerance_fields: Dict[str, Any] = {}
        for name in Tolerances.model_fields:
            raw = os.environ.get(f"CUTLAB_{name.upper()}")
            if raw is not None:
                tolerance_fields[name] = raw

        fields: Dict[str, Any] = {}
        for name in cls.model_fields:
            if name == "tolerances":
                continue
            raw = os.environ.get(f"CUTLAB_{name.upper()}")
            if raw is not None:
                fields[name] = raw

        return cls(tolerances=Tolerances(**tolerance_fields), **fields)
