"""
Report serialization shared by the CLI and the pipelines.

Reports are deterministic: floats keep 12 significant digits, keys are sorted, and nothing time-dependent is
written, so identical inputs give byte-identical files.
"""

import json
import math
import os
from fractions import Fraction
from typing import Any, Dict, List, Sequence

import numpy as np
import polars as pl

from src.graph.signed_graph import SignedGraph, is_balanced

SCHEMA_VERSION = "1.0"
SIGNIFICANT_DIGITS = 12

TABLE_CONFIG = {
    "tbl_rows": -1,
    "tbl_cols": -1,
    "float_precision": SIGNIFICANT_DIGITS,
    "tbl_hide_dataframe_shape": True,
}


def round_float(value: float) -> Any:
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def to_plain(value: Any) -> Any:
    """Convert numpy types, dataclass-like records and fractions into JSON-ready values."""
    if hasattr(value, "as_dict"):
        return to_plain(value.as_dict())
    if isinstance(value, dict):
        return {str(key): to_plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_plain(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return round_float(value)
    if isinstance(value, Fraction):
        return str(value)
    return value


def graph_summary(graph: SignedGraph) -> Dict[str, Any]:
    return {
        "labels": list(graph.labels),
        "n": graph.n,
        "edges": graph.num_edges,
        "max_degree": graph.max_degree,
        "volume": graph.volume,
        "negative_edges": [[graph.label(x), graph.label(y)] for x, y, _ in graph.negative_edges],
        "balanced": is_balanced(graph).balanced,
    }


def build_report(command: str, graph: SignedGraph, payload: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "graph": graph_summary(graph),
        "result": payload,
    }


def to_json(report: Dict[str, Any]) -> str:
    return json.dumps(to_plain(report), indent=2, sort_keys=True, ensure_ascii=False)


def _cell(value: Any) -> Any:
    value = to_plain(value)
    if value is None:
        return None
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return str(value)


def to_table(rows: Sequence[Dict[str, Any]]) -> str:
    """Render flat rows as an aligned polars table with every row and column shown."""
    if not rows:
        return ""
    columns: List[str] = []
    for row in rows:
        columns.extend(key for key in row if key not in columns)
    df = pl.DataFrame(
        [{column: _cell(row.get(column)) for column in columns} for row in rows],
        infer_schema_length=None,
    )
    with pl.Config(**TABLE_CONFIG):
        return str(df)


def save_report(report: Dict[str, Any], report_dir: str, name: str, logger) -> str:
    """
    Save a report as ``<report_dir>/<name>.json``.

    Args:
        report: Report tree from ``build_report``.
        report_dir: Output directory, created when missing.
        name: File stem; reports with the same name overwrite each other.
        logger: Logger instance for logging

    Returns:
        str: Path to the saved file
    """
    os.makedirs(report_dir, exist_ok=True)
    filepath = os.path.join(report_dir, f"{name}.json")
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(to_json(report) + "\n")

    logger.info(f"Saved report to {filepath}")
    return filepath
