"""Newline-delimited JSON record files."""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, Tuple

from kepr.exceptions import DataError


def iter_records(path: Path) -> Iterator[Tuple[int, Dict[str, Any]]]:
    """Yield ``(line_number, record)`` for every non-blank line.

    Raises:
        DataError: If the file cannot be read or a line is not a JSON object
    """
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as handle:
            for line_number, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as e:
                    raise DataError(f"{path}:{line_number}: malformed record: {e}") from e
                if not isinstance(record, dict):
                    raise DataError(f"{path}:{line_number}: record must be a JSON object")
                yield line_number, record
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}") from e


def write_records(path: Path, records: Iterable[Dict[str, Any]]) -> int:
    """Write one compact JSON object per line; returns the record count.

    Raises:
        DataError: If the file cannot be written
    """
    path = Path(path)
    count = 0
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as out:
            for record in records:
                out.write(json.dumps(record, ensure_ascii=False) + "\n")
                count += 1
    except OSError as e:
        raise DataError(f"cannot write {path}: {e}") from e
    return count
