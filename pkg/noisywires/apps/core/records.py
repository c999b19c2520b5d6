"""
Standardized output formatting for command results.
CSV rows for sweeps and JSON records for single evaluations.
"""

import csv
import json
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Sequence, TextIO


def format_float(value: Any) -> str:
    """Round-trip-exact text for a double (17 significant digits)."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def _json_default(value: Any) -> Any:
    # numpy scalars and arrays
    if hasattr(value, "tolist"):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


@dataclass
class SuccessRecord:
    """Standard success record structure."""

    data: Dict[str, Any]
    meta: Optional[Dict[str, Any]] = None
    success: bool = True

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"success": self.success, "data": self.data}
        if self.meta:
            result["meta"] = self.meta
        return result


def dumps(record: Dict[str, Any]) -> str:
    """Deterministic JSON text (sorted keys)."""
    return json.dumps(record, sort_keys=True, default=_json_default, allow_nan=True)


def write_json(stream: TextIO, record: Dict[str, Any]) -> None:
    stream.write(dumps(record) + "\n")


def write_csv(
    stream: TextIO,
    columns: Sequence[str],
    rows: Iterable[Dict[str, Any]],
    include_header: bool = True,
) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    if include_header:
        writer.writerow(columns)
    for row in rows:
        writer.writerow([format_float(row.get(column)) for column in columns])
