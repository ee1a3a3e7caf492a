"""Seeded generators for small integer programs with a fractional root LP."""

import logging
from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from cutlab.model import is_fractional
from cutlab.lp.simplex import solve_lp
from cutlab.readers import read_instance, write_instance
from cutlab.types.instance import MipInstance, RowKind

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 50


class CorpusKind(str, Enum):
    KNAPSACK = "knapsack"
    SET_COVER = "set_cover"
    PACKING = "packing"
    MIXED = "mixed"


class CorpusSize(BaseModel):
    """Variable and row counts for generated instances."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=12, ge=2, le=60)
    m: int = Field(default=3, ge=1, le=60)
    density: float = Field(default=0.5, gt=0.0, le=1.0)


def _knapsack(rng: np.random.Generator, size: CorpusSize, name: str) -> MipInstance:
    """Multi-dimensional 0/1 knapsack, max value as min of the negation."""
    weights = rng.integers(5, 31, size=(size.m, size.n))
    capacity = np.floor(0.5 * weights.sum(axis=1))
    values = rng.integers(5, 41, size=size.n)
    return MipInstance(
        name=name, objective=-values, rows=weights, rhs=capacity,
        lower=np.zeros(size.n), upper=np.ones(size.n), integer=range(size.n),
    )


def _set_cover(rng: np.random.Generator, size: CorpusSize, name: str) -> MipInstance:
    """Cover every element at least once; covering rows are stored negated."""
    incidence = (rng.random((size.m, size.n)) < size.density).astype(float)
    for i in range(size.m):
        # every element lies in at least two sets
        while incidence[i].sum() < 2:
            incidence[i, rng.integers(size.n)] = 1.0
    costs = rng.integers(1, 11, size=size.n)
    return MipInstance(
        name=name, objective=costs, rows=-incidence, rhs=-np.ones(size.m),
        lower=np.zeros(size.n), upper=np.ones(size.n), integer=range(size.n),
    )


def _packing(rng: np.random.Generator, size: CorpusSize, name: str) -> MipInstance:
    """General-integer packing with variables in {0, ..., 3}."""
    mask = rng.random((size.m, size.n)) < size.density
    coeffs = np.where(mask, rng.integers(1, 10, size=(size.m, size.n)), 0)
    rhs = np.maximum(np.floor(0.4 * 3 * coeffs.sum(axis=1)), 1.0)
    profits = rng.integers(1, 21, size=size.n)
    return MipInstance(
        name=name, objective=-profits, rows=coeffs, rhs=rhs,
        lower=np.zeros(size.n), upper=np.full(size.n, 3.0), integer=range(size.n),
    )


def _mixed(rng: np.random.Generator, size: CorpusSize, name: str) -> MipInstance:
    """Fixed-charge style rows: continuous flows limited by integer capacities, one demand row."""
    n_int = size.n // 2
    n_cont = size.n - n_int
    rows, rhs = [], []
    for _ in range(size.m):
        row = np.zeros(size.n)
        ints = rng.choice(n_int, size=max(1, int(size.density * n_int)), replace=False)
        conts = n_int + rng.choice(n_cont, size=max(1, int(size.density * n_cont)), replace=False)
        row[conts] = rng.integers(1, 6, size=conts.size)
        row[ints] = -rng.integers(3, 9, size=ints.size)
        rows.append(row)
        rhs.append(float(rng.integers(0, 4)))
    demand = np.zeros(size.n)
    demand[n_int:] = -1.0
    demand[: n_int] = -rng.integers(0, 2, size=n_int)
    rows.append(demand)
    rhs.append(-float(rng.integers(2, 6)))
    cost = np.concatenate([rng.integers(4, 16, size=n_int), rng.integers(1, 4, size=n_cont)])
    upper = np.concatenate([np.full(n_int, 3.0), np.full(n_cont, 5.0)])
    return MipInstance(
        name=name, objective=cost, rows=np.array(rows), rhs=np.array(rhs),
        lower=np.zeros(size.n), upper=upper, integer=range(n_int),
        row_kind=[RowKind.LE] * len(rows),
    )


_GENERATORS = {
    CorpusKind.KNAPSACK: _knapsack,
    CorpusKind.SET_COVER: _set_cover,
    CorpusKind.PACKING: _packing,
    CorpusKind.MIXED: _mixed,
}


def has_fractional_root(inst: MipInstance) -> bool:
    lp = solve_lp(inst)
    return lp.is_optimal and bool(np.any(is_fractional(lp.point) & inst.integer_mask))


def gen_corpus(
    kind: Union[CorpusKind, str],
    count: int,
    size: Optional[CorpusSize] = None,
    seed: int = 0,
) -> List[MipInstance]:
    """``count`` feasible, bounded instances of ``kind`` whose root LP is fractional.

    Instance ``i`` is drawn from the stream (seed, i, attempt); draws with an
    infeasible or integral root LP are resampled.
    """
    kind = CorpusKind(kind)
    size = size or CorpusSize()
    generate = _GENERATORS[kind]
    corpus = []
    for i in range(count):
        name = f"{kind.value}-{seed}-{i:03d}"
        for attempt in range(MAX_ATTEMPTS):
            inst = generate(np.random.default_rng([seed, i, attempt]), size, name)
            if has_fractional_root(inst):
                break
            logger.warning(f"{name}: root LP infeasible or integral on attempt {attempt}, resampling")
        else:
            raise ValueError(f"{name}: no instance with a fractional root after {MAX_ATTEMPTS} attempts")
        corpus.append(inst)
    logger.info(f"generated {count} {kind.value} instances (seed {seed})")
    return corpus


def write_corpus(corpus: List[MipInstance], directory: Union[str, Path]) -> List[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for inst in corpus:
        path = directory / f"{inst.name}.json"
        write_instance(inst, path)
        paths.append(path)
    return paths


def load_corpus(directory: Union[str, Path]) -> List[MipInstance]:
    """Every .json and .mps instance in ``directory``, sorted by file name."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory {directory} does not exist")
    paths = sorted(p for p in directory.iterdir() if p.suffix.lower() in (".json", ".mps"))
    return [read_instance(p) for p in paths]
