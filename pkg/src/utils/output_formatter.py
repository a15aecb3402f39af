#!/usr/bin/env python3
"""
Output Formatter for muntzbasis

Writes experiment artifacts as JSON documents or plot-ready CSV tables.
Every artifact embeds the tool version, the tolerances in force, the
resolved config and the seed. Artifacts carry no timestamps, so a re-run of
the same config reproduces them byte for byte.
"""

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from .logger import LoggerMixin

VERSION = "0.1.0"


def to_jsonable(value: Any) -> Any:
    """Plain JSON types from numpy scalars, arrays, tuples and objects with to_dict."""
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return repr(value) if math.isfinite(value) else ("inf" if value > 0 else "-inf" if value < 0 else "nan")
    return str(value)


class OutputFormatter(LoggerMixin):
    """
    Artifact writer for experiment results.

    JSON documents hold the "muntzbasis", "config", "seed" and "result"
    sections with sorted keys. CSV tables open with '# key: value' comment
    lines followed by a header row.
    """

    VERSION = VERSION

    def __init__(self, tolerances: Optional[Dict[str, Any]] = None):
        """
        Initialize the output formatter.

        Args:
            tolerances: Tolerances embedded in every artifact
        """
        self.tolerances = dict(tolerances or {})

    def header(self) -> Dict[str, Any]:
        return {"version": self.VERSION, "tolerances": to_jsonable(self.tolerances)}

    def render_json(self, result: Any, config: Mapping[str, Any]) -> str:
        document = {
            "muntzbasis": self.header(),
            "config": to_jsonable(config),
            "seed": config.get("seed"),
            "result": to_jsonable(result),
        }
        return json.dumps(document, indent=2, sort_keys=True) + "\n"

    def render_csv(self, rows: Sequence[Mapping[str, Any]], columns: Sequence[str],
                   config: Mapping[str, Any]) -> str:
        buffer = io.StringIO()
        buffer.write(f"# muntzbasis: {self.VERSION}\n")
        buffer.write(f"# tolerances: {json.dumps(to_jsonable(self.tolerances), sort_keys=True)}\n")
        buffer.write(f"# config: {json.dumps(to_jsonable(config), sort_keys=True)}\n")
        buffer.write(f"# seed: {config.get('seed')}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(column)) for column in columns])
        return buffer.getvalue()

    def save_json(self, result: Any, config: Mapping[str, Any], output_path: Union[str, Path]) -> Path:
        """
        Save a result as a JSON artifact.

        Raises:
            OSError: the file could not be written
        """
        return self._write(self.render_json(result, config), output_path, "JSON")

    def save_csv(self, rows: Sequence[Mapping[str, Any]], columns: Sequence[str],
                 config: Mapping[str, Any], output_path: Union[str, Path]) -> Path:
        """
        Save table rows as a CSV artifact.

        Raises:
            OSError: the file could not be written
        """
        return self._write(self.render_csv(rows, columns, config), output_path, "CSV")

    def _write(self, text: str, output_path: Union[str, Path], kind: str) -> Path:
        path = Path(output_path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
        except OSError as e:
            self.log_error(f"Failed to save {kind} artifact: {e}")
            raise
        self.log_info(f"{kind} artifact saved to: {path}")
        return path

    def get_supported_formats(self) -> List[str]:
        return ["json", "csv"]
