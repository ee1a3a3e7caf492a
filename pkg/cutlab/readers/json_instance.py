import json
from pathlib import Path
from typing import Any, Dict, Union

from pydantic import ValidationError

from cutlab.errors import InstanceFormatError
from cutlab.types.instance import MipInstance

_REQUIRED = ("objective",)


def instance_from_dict(data: Dict[str, Any]) -> MipInstance:
    """Validate a decoded JSON instance."""
    if not isinstance(data, dict):
        raise InstanceFormatError(f"instance must be a JSON object, got {type(data).__name__}")
    for key in _REQUIRED:
        if key not in data:
            raise InstanceFormatError(f"instance is missing required field '{key}'")
    try:
        return MipInstance.model_validate(data)
    except ValidationError as exc:
        raise InstanceFormatError(f"invalid instance: {exc}") from None


def load_json_instance(path: Union[str, Path]) -> MipInstance:
    try:
        with open(path, "r") as handle:
            # NaN literals are rejected at parse time
            data = json.load(handle, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: {exc}") from None
    inst = instance_from_dict(data)
    if inst.name == "unnamed":
        inst = inst.model_copy(update={"name": Path(path).stem})
    return inst


def dump_json_instance(inst: MipInstance, path: Union[str, Path]) -> None:
    with open(path, "w") as handle:
        json.dump(inst.to_json_dict(), handle, indent=2)
        handle.write("\n")


def _reject_constant(token: str) -> float:
    if token == "NaN":
        raise InstanceFormatError("instance contains NaN")
    return float(token)
