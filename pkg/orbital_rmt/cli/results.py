"""
Result records and their deterministic file formats.

`<stem>.jsonl` holds one object per data point followed by a summary
object carrying the resolved config. `<stem>.csv` holds the same points
under the experiment's fixed header, after one `#` provenance line.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from ..constants import CSV_COLUMNS, SCHEMA_VERSION
from ..exceptions import InvalidArgumentError, ResultWriteError
from ..utils.logging import get_logger

logger = get_logger(__name__)


def to_jsonable(value: Any) -> Any:
    """Plain JSON types; numpy scalars unwrap, non-finite floats become None."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if value is None or isinstance(value, str):
        return value
    return str(value)


@dataclass
class ResultRecord:
    """
    Everything one run produced.

    Attributes:
        experiment: Experiment name
        config: The resolved config echo
        rows: Per-point outputs keyed by the experiment's CSV columns
        summary: Fits and aggregate numbers
        diagnostics: Redraw counts, discard rates and similar
        timing: Wall-clock seconds; only written when the config asks
    """

    experiment: str
    config: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    timing: Optional[float] = None
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        if self.experiment not in CSV_COLUMNS:
            raise InvalidArgumentError(f"No result schema for experiment {self.experiment!r}")

    @property
    def columns(self) -> List[str]:
        return CSV_COLUMNS[self.experiment]

    def point_lines(self) -> List[Dict[str, Any]]:
        return [
            {
                "record": "point",
                "schema_version": self.schema_version,
                "experiment": self.experiment,
                "seed": self.config.get("seed"),
                **{key: row.get(key) for key in self.columns},
            }
            for row in self.rows
        ]

    def summary_line(self) -> Dict[str, Any]:
        line = {
            "record": "summary",
            "schema_version": self.schema_version,
            "experiment": self.experiment,
            "seed": self.config.get("seed"),
            "config": self.config,
            "summary": self.summary,
            "diagnostics": self.diagnostics,
        }
        if self.config.get("record_timing") and self.timing is not None:
            line["wall_clock_seconds"] = self.timing
        return line

    def to_jsonl(self) -> str:
        lines = self.point_lines() + [self.summary_line()]
        return "".join(json.dumps(to_jsonable(line), sort_keys=True) + "\n" for line in lines)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        provenance = {"schema_version": self.schema_version, "config": self.config}
        buffer.write("# orbital-rmt " + json.dumps(to_jsonable(provenance), sort_keys=True) + "\n")
        writer = csv.DictWriter(buffer, fieldnames=self.columns, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({key: _csv_cell(row.get(key)) for key in self.columns})
        return buffer.getvalue()


def _csv_cell(value: Any) -> Any:
    value = to_jsonable(value)
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def output_paths(path: Union[str, Path]) -> Tuple[Path, Path]:
    """(jsonl, csv) paths for an output stem; a .jsonl or .csv suffix is dropped."""
    path = Path(path)
    if path.suffix in (".jsonl", ".csv"):
        path = path.with_suffix("")
    return path.with_name(path.name + ".jsonl"), path.with_name(path.name + ".csv")


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp.write_text(text, encoding="utf-8")
        tmp.replace(path)
    except OSError as e:
        raise ResultWriteError(f"Cannot write results: {e.strerror or e}", str(path))


def write_results(record: ResultRecord, path: Union[str, Path]) -> Tuple[Path, Path]:
    """
    Write the record as line-delimited JSON plus a CSV table.

    Output is a pure function of the record, so reruns of a config give
    byte-identical files.

    Args:
        record: Result to write
        path: Output stem

    Returns:
        The (jsonl, csv) paths written

    Raises:
        ResultWriteError: On any I/O failure, with the offending path
    """
    jsonl_path, csv_path = output_paths(path)
    _write_atomic(jsonl_path, record.to_jsonl())
    _write_atomic(csv_path, record.to_csv())
    logger.info(f"Wrote {jsonl_path} and {csv_path}")
    return jsonl_path, csv_path
