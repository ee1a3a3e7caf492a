from pathlib import Path
from typing import Union

from cutlab.errors import InstanceFormatError
from cutlab.readers.json_instance import dump_json_instance, instance_from_dict, load_json_instance
from cutlab.readers.mps import load_mps
from cutlab.types.instance import MipInstance


def read_instance(path: Union[str, Path]) -> MipInstance:
    """Load an instance from ``.json`` or ``.mps`` by suffix."""
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return load_json_instance(path)
    if suffix in (".mps", ".fmps"):
        return load_mps(path)
    raise InstanceFormatError(f"unsupported instance format '{suffix}' for {path}")


def write_instance(inst: MipInstance, path: Union[str, Path]) -> None:
    if Path(path).suffix.lower() != ".json":
        raise InstanceFormatError("instances are written as JSON only")
    dump_json_instance(inst, path)


__all__ = ["read_instance", "write_instance", "instance_from_dict", "load_mps"]
