"""Reader for a subset of the MPS format.

Supported: NAME, ROWS (N/L/G/E), COLUMNS with INTORG/INTEND markers, RHS and
BOUNDS (UP, LO, FX, FR, MI, PL, BV, LI, UI). RANGES and SOS sections are
rejected. G rows are negated into LE rows; E rows keep the EQ tag.
"""

import logging
from pathlib import Path
from typing import Dict, List, Union

import numpy as np

from cutlab.errors import InstanceFormatError
from cutlab.types.instance import MipInstance, RowKind

logger = logging.getLogger(__name__)

SECTIONS = ("ROWS", "COLUMNS", "RHS", "BOUNDS")


def load_mps(path: Union[str, Path]) -> MipInstance:
    name = Path(path).stem
    mode = None
    objective_row = None
    row_type: Dict[str, str] = {}
    row_order: List[str] = []
    col_order: List[str] = []
    col_index: Dict[str, int] = {}
    entries: Dict[str, Dict[int, float]] = {}
    cost: Dict[int, float] = {}
    rhs: Dict[str, float] = {}
    lower: Dict[int, float] = {}
    upper: Dict[int, float] = {}
    integer = set()
    in_integer_block = False

    with open(path, "r") as reader:
        for lineno, raw in enumerate(reader, start=1):
            if not raw.strip() or raw.startswith("*"):
                continue
            fields = raw.split()
            head = fields[0]
            if head == "ENDATA":
                break
            if head == "NAME":
                if len(fields) > 1:
                    name = fields[1]
                continue
            if head in ("RANGES", "SOS"):
                raise InstanceFormatError(f"{path}:{lineno}: section {head} is not supported")
            if head in SECTIONS and not raw[0].isspace():
                mode = head
                continue

            if mode == "ROWS":
                kind, row = _expect(fields, 2, path, lineno)
                if kind not in ("N", "L", "G", "E"):
                    raise InstanceFormatError(f"{path}:{lineno}: unknown row type '{kind}'")
                if kind == "N":
                    if objective_row is None:
                        objective_row = row
                    continue
                row_type[row] = kind
                row_order.append(row)
                entries[row] = {}
            elif mode == "COLUMNS":
                if len(fields) >= 3 and fields[1].strip("'") == "MARKER":
                    marker = fields[2].strip("'")
                    if marker == "INTORG":
                        in_integer_block = True
                    elif marker == "INTEND":
                        in_integer_block = False
                    else:
                        raise InstanceFormatError(f"{path}:{lineno}: unknown marker '{marker}'")
                    continue
                col = fields[0]
                if col not in col_index:
                    col_index[col] = len(col_order)
                    col_order.append(col)
                j = col_index[col]
                if in_integer_block:
                    integer.add(j)
                for row, value in _pairs(fields[1:], path, lineno):
                    if row == objective_row:
                        cost[j] = value
                    elif row in entries:
                        entries[row][j] = value
                    else:
                        raise InstanceFormatError(f"{path}:{lineno}: unknown row '{row}'")
            elif mode == "RHS":
                # the RHS set name is optional in free MPS
                body = fields[1:] if len(fields) % 2 == 1 else fields
                for row, value in _pairs(body, path, lineno):
                    if row == objective_row:
                        logger.debug(f"ignoring objective constant {value} in {path}")
                    elif row in row_type:
                        rhs[row] = value
                    else:
                        raise InstanceFormatError(f"{path}:{lineno}: unknown row '{row}'")
            elif mode == "BOUNDS":
                _apply_bound(fields, col_index, lower, upper, integer, path, lineno)
            else:
                raise InstanceFormatError(f"{path}:{lineno}: data outside of a section")

    n = len(col_order)
    if n == 0:
        raise InstanceFormatError(f"{path}: no columns")
    objective = np.array([cost.get(j, 0.0) for j in range(n)])
    rows = np.zeros((len(row_order), n))
    b = np.zeros(len(row_order))
    kinds = []
    for i, row in enumerate(row_order):
        for j, value in entries[row].items():
            rows[i, j] = value
        b[i] = rhs.get(row, 0.0)
        if row_type[row] == "G":
            rows[i] *= -1.0
            b[i] *= -1.0
        kinds.append(RowKind.EQ if row_type[row] == "E" else RowKind.LE)

    # MPS default bounds are [0, inf); integer columns without an upper stay unbounded
    lo = [lower.get(j, 0.0) for j in range(n)]
    up = [upper.get(j, np.inf) for j in range(n)]
    try:
        return MipInstance(
            name=name,
            objective=objective,
            rows=rows,
            rhs=b,
            lower=lo,
            upper=up,
            integer=sorted(integer),
            row_kind=tuple(kinds),
        )
    except ValueError as exc:
        raise InstanceFormatError(f"{path}: {exc}") from None


def _expect(fields, count, path, lineno):
    if len(fields) < count:
        raise InstanceFormatError(f"{path}:{lineno}: expected {count} fields")
    return fields[:count]


def _pairs(fields, path, lineno):
    if len(fields) % 2:
        raise InstanceFormatError(f"{path}:{lineno}: unpaired name/value entries")
    for k in range(0, len(fields), 2):
        try:
            yield fields[k], float(fields[k + 1])
        except ValueError:
            raise InstanceFormatError(f"{path}:{lineno}: bad number '{fields[k + 1]}'") from None


def _apply_bound(fields, col_index, lower, upper, integer, path, lineno):
    kind = fields[0]
    # bound set name is optional; FR/MI/PL/BV may carry no value
    if kind in ("FR", "MI", "PL", "BV"):
        col = fields[2] if len(fields) >= 3 else fields[1]
        value = None
    else:
        if len(fields) < 3:
            raise InstanceFormatError(f"{path}:{lineno}: bound {kind} needs a value")
        col = fields[-2]
        try:
            value = float(fields[-1])
        except ValueError:
            raise InstanceFormatError(f"{path}:{lineno}: bad number '{fields[-1]}'") from None
    if col not in col_index:
        raise InstanceFormatError(f"{path}:{lineno}: unknown column '{col}'")
    j = col_index[col]
    if kind == "UP":
        upper[j] = value
        if value < 0 and lower.get(j, 0.0) == 0.0:
            lower[j] = -np.inf
    elif kind == "LO":
        lower[j] = value
    elif kind == "FX":
        lower[j] = upper[j] = value
    elif kind == "FR":
        lower[j], upper[j] = -np.inf, np.inf
    elif kind == "MI":
        lower[j] = -np.inf
    elif kind == "PL":
        upper[j] = np.inf
    elif kind == "BV":
        lower[j], upper[j] = 0.0, 1.0
        integer.add(j)
    elif kind == "LI":
        lower[j] = value
        integer.add(j)
    elif kind == "UI":
        upper[j] = value
        integer.add(j)
    else:
        raise InstanceFormatError(f"{path}:{lineno}: unknown bound type '{kind}'")
