"""
Text formats: ``.sg`` edge lists (``u v s`` per line, ``#`` comments) and vertex functions
(``label value`` per line).

Serialization is canonical: the text depends only on the labelled graph, so writing what was read
reproduces the input text exactly.
"""

import re
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from src.graph.signed_graph import SignedGraph
from src.utils.errors import GraphFormatError, GraphValidationError

_NUMBER = re.compile(r"(\d+)")


def natural_key(label: str) -> Tuple:
    """Numeric-aware sort key: "2" < "10", "v2" < "v10"."""
    parts = tuple((0, int(part), "") if part.isdigit() else (1, 0, part) for part in _NUMBER.split(label) if part)
    return parts + ((2, 0, label),)


def _read_text(source: Union[str, Path]) -> str:
    if isinstance(source, Path):
        return source.read_text()
    if "\n" not in source:
        try:
            if Path(source).is_file():
                return Path(source).read_text()
        except OSError:
            pass
    return source


def _parse_sign(token: str, line_number: int) -> int:
    if token in ("+1", "1", "+"):
        return 1
    if token in ("-1", "-"):
        return -1
    raise GraphFormatError(f"sign must be +1 or -1, got {token!r}", line_number)


def read_edge_list(source: Union[str, Path]) -> SignedGraph:
    """
    Parse an edge list from a path or from text.

    Raises:
        GraphFormatError: malformed line, self-loop, duplicate edge (with the offending line number).
        GraphValidationError: the edges describe a disconnected graph.
    """
    edges: List[Tuple[str, str, int]] = []
    seen = {}
    for line_number, raw in enumerate(_read_text(source).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise GraphFormatError(f"expected 'u v s', got {line!r}", line_number)
        u, v, token = tokens
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", line_number)
        key = frozenset((u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {{{u}, {v}}} (first on line {seen[key]})", line_number)
        seen[key] = line_number
        edges.append((u, v, _parse_sign(token, line_number)))

    if not edges:
        raise GraphFormatError("no edges found")
    try:
        return SignedGraph.from_edge_list(edges)
    except GraphFormatError:
        raise
    except GraphValidationError as e:
        raise GraphValidationError(f"invalid signed graph: {e}") from e


def write_edge_list(graph: SignedGraph) -> str:
    rows = []
    for x, y, sign in graph.edges:
        a, b = sorted((graph.label(x), graph.label(y)), key=natural_key)
        rows.append((natural_key(a), natural_key(b), a, b, sign))
    rows.sort(key=lambda row: (row[0], row[1]))

    lines = [f"# signed graph: {graph.n} vertices, {graph.num_edges} edges"]
    lines.extend(f"{a} {b} {'+1' if sign > 0 else '-1'}" for _, _, a, b, sign in rows)
    return "\n".join(lines) + "\n"


def read_vertex_function(graph: SignedGraph, source: Union[str, Path]) -> np.ndarray:
    """Parse ``label value`` lines; every vertex must receive exactly one finite value."""
    values = np.full(graph.n, np.nan)
    for line_number, raw in enumerate(_read_text(source).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"expected 'label value', got {line!r}", line_number)
        label, token = tokens
        try:
            x = graph.index(label)
        except KeyError:
            raise GraphFormatError(f"unknown vertex {label!r}", line_number) from None
        if not np.isnan(values[x]):
            raise GraphFormatError(f"vertex {label!r} assigned twice", line_number)
        try:
            values[x] = float(token)
        except ValueError:
            raise GraphFormatError(f"value must be a real number, got {token!r}", line_number) from None
        if not np.isfinite(values[x]):
            raise GraphFormatError(f"value must be finite, got {token!r}", line_number)

    missing = [graph.label(x) for x in range(graph.n) if np.isnan(values[x])]
    if missing:
        raise GraphFormatError(f"no value for vertices {', '.join(missing)}")
    return values


def write_vertex_function(graph: SignedGraph, values: np.ndarray) -> str:
    return "".join(f"{graph.label(x)} {float(values[x])!r}\n" for x in range(graph.n))
