"""Append-only JSON-lines store of experiment records."""

import logging
import threading
from pathlib import Path
from typing import List, Set, Tuple, Union

from pydantic import ValidationError

from cutlab.types.records import ExperimentRecord

logger = logging.getLogger(__name__)

RecordKey = Tuple[str, int, str]


class ResultStore:
    """One record per line, keyed by (instance, seed, variant).

    Lines that fail to parse (a write cut short by an interruption) are
    skipped with a warning, so a rerun recomputes them.
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._lock = threading.Lock()

    def load(self) -> List[ExperimentRecord]:
        if not self.path.exists():
            return []
        records = {}
        with open(self.path, "r") as handle:
            for lineno, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    record = ExperimentRecord.model_validate_json(line)
                except ValidationError as exc:
                    logger.warning(f"{self.path}:{lineno}: unreadable record skipped ({exc.error_count()} errors)")
                    continue
                # a later line for the same key wins
                records[record.key] = record
        return list(records.values())

    def keys(self) -> Set[RecordKey]:
        return {record.key for record in self.load()}

    def append(self, record: ExperimentRecord) -> None:
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a") as handle:
                handle.write(record.model_dump_json())
                handle.write("\n")
                handle.flush()
