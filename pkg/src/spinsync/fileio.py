"""Edge-list and phase-file parsing plus deterministic report emission.

Graph files: first line "n m", then m lines "u v w" (ASCII decimal,
space-separated).  Lines starting with '#' are comments; spun graphs are
written with a "# spin base_n=<n> k=<k>" header and unit weights.

JSON reports are emitted by a byte-stable writer: insertion-ordered keys,
floats at 17 significant digits, rationals as "p/q" strings plus a decimal.
"""

from __future__ import annotations

import dataclasses
import json
import math
from fractions import Fraction

import numpy as np

from .dynamics import Classification
from .errors import (
    DuplicateEdgeError,
    IoError,
    LoopEdgeError,
    ParseError,
    VertexOutOfRangeError,
    ZeroWeightError,
)
from .graphs import SpinGraph, WeightedGraph

__all__ = [
    "format_graph",
    "write_graph",
    "parse_graph_text",
    "parse_graph_file",
    "parse_phases_file",
    "to_jsonable",
    "json_dumps",
    "density_rows_csv",
    "emit_report",
]


# -- graph files ---------------------------------------------------------------


def format_graph(g) -> str:
    """Render a graph in the edge-list text format (spun graphs get a header comment)."""
    lines = []
    if isinstance(g, SpinGraph):
        lines.append(f"# spin base_n={g.base.n} k={g.k}")
        lines.append(f"{g.n} {g.m}")
        lines.extend(f"{u} {v} 1" for u, v in g.edge_list())
    else:
        lines.append(f"{g.n} {g.m}")
        lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def write_graph(g, path) -> None:
    try:
        with open(path, "w") as fh:
            fh.write(format_graph(g))
    except OSError as exc:
        raise IoError(str(exc)) from exc


def parse_graph_text(text: str, source: str = "<string>") -> WeightedGraph:
    """Parse the edge-list format; comments and blank lines are skipped.

    Graph validation errors (loops, duplicates, zero weights, out-of-range
    vertices) are raised with the offending line number in the message.
    """
    header = None
    edges = []
    seen = set()
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise ParseError(f"{source}:{lineno}: expected 'n m' header, got {line!r}")
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError as exc:
                raise ParseError(f"{source}:{lineno}: non-integer header {line!r}") from exc
            header = lineno
            continue
        if len(fields) != 3:
            raise ParseError(f"{source}:{lineno}: expected 'u v w', got {line!r}")
        try:
            u, v, w = int(fields[0]), int(fields[1]), int(fields[2])
        except ValueError as exc:
            raise ParseError(f"{source}:{lineno}: non-integer edge {line!r}") from exc
        # validate eagerly so errors carry the line number
        if u == v:
            raise LoopEdgeError(f"{source}:{lineno}: loop edge at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRangeError(f"{source}:{lineno}: edge ({u},{v}) outside 0..{n - 1}")
        if w < 1:
            raise ZeroWeightError(f"{source}:{lineno}: edge ({u},{v}) has weight {w}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"{source}:{lineno}: duplicate edge ({u},{v})")
        seen.add(key)
        edges.append((u, v, w))
    if header is None:
        raise ParseError(f"{source}: empty graph file")
    if len(edges) != m:
        raise ParseError(f"{source}: header promises {m} edges, found {len(edges)}")
    return WeightedGraph(n, edges)


def parse_graph_file(path) -> WeightedGraph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return parse_graph_text(text, source=str(path))


def parse_phases_file(path) -> np.ndarray:
    """One angle per line, radians; '#' comments and blank lines skipped."""
    values = []
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    values.append(float(line))
                except ValueError as exc:
                    raise ParseError(f"{path}:{lineno}: not a number: {line!r}") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return np.asarray(values, dtype=float)


# -- deterministic reports -------------------------------------------------------


def to_jsonable(value):
    """Convert report values to a JSON-ready tree, preserving field order."""
    if isinstance(value, Fraction):
        return {
            "fraction": f"{value.numerator}/{value.denominator}",
            "decimal": float(value),
        }
    if isinstance(value, Classification):
        return value.label()
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise IoError(f"cannot serialize non-finite float {x!r}")
    return format(x, ".17g")


def _dumps(value, indent: int, level: int) -> str:
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad_in}{json.dumps(str(k))}: {_dumps(v, indent, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad_in}{_dumps(v, indent, level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise IoError(f"cannot serialize {type(value).__name__}")


def json_dumps(value, indent: int = 2) -> str:
    """Byte-stable JSON: insertion-ordered keys, floats at 17 significant digits."""
    return _dumps(to_jsonable(value), indent, 0) + "\n"


def density_rows_csv(rows) -> str:
    """CSV for density rows; cells hold the exact fraction and its decimal."""
    lines = ["k,mu_paper,mu_strong"]
    for row in rows:
        mp, ms = row.mu_paper, row.mu_strong
        lines.append(
            f"{row.k},"
            f"{mp.numerator}/{mp.denominator}={_format_float(float(mp))},"
            f"{ms.numerator}/{ms.denominator}={_format_float(float(ms))}"
        )
    return "\n".join(lines) + "\n"


def emit_report(value, path, fmt: str = "json") -> None:
    """Serialize a report to path as JSON or, for density tables, CSV."""
    if fmt == "json":
        payload = json_dumps(value)
    elif fmt == "csv":
        try:
            payload = density_rows_csv(value)
        except AttributeError as exc:
            raise IoError("csv format is only available for density tables") from exc
    else:
        raise IoError(f"unknown format {fmt!r}")
    try:
        with open(path, "w") as fh:
            fh.write(payload)
    except OSError as exc:
        raise IoError(str(exc)) from exc
