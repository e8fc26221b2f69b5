"""File formats: plain-text points files and JSON graph files.

Points file: one point per line, "x y" or "x,y", '#' starts a comment.
Comment lines of the form "# key: value" are collected as metadata (instance
generators record their parameters this way; parsers may ignore them).

Graph file: a single JSON document with a format version, the shape angles,
the point coordinates and the directed cone edges as (u, i, v) triples with
1-based cone index i.  Floats survive a round trip bit-for-bit (shortest
round-trip decimal printing on write, exact binary value on read).
"""

from __future__ import annotations

import json

import numpy as np

from .errors import GraphFormatError, PointsParseError
from .geometry import canonical_triangle
from .graph import PointSet, TDGraph

GRAPH_FORMAT = "tdgraph/1"


def parse_points(text: str) -> tuple[np.ndarray, dict[str, str]]:
    """Parse a points file; returns (coords (n,2), metadata).

    Raises PointsParseError with the 1-based line number of the first
    malformed line.
    """
    coords = []
    meta: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, _, value = body.partition(":")
                if key.strip():
                    meta[key.strip()] = value.strip()
            continue
        fields = line.split(",") if "," in line else line.split()
        if len(fields) != 2:
            raise PointsParseError(
                f"line {lineno}: expected two coordinates, got {raw!r}"
            )
        try:
            coords.append((float(fields[0]), float(fields[1])))
        except ValueError:
            raise PointsParseError(
                f"line {lineno}: could not parse coordinates from {raw!r}"
            ) from None
    return np.asarray(coords, dtype=np.float64).reshape(-1, 2), meta


def format_points(coords, meta: dict | None = None) -> str:
    lines = []
    for key, value in (meta or {}).items():
        lines.append(f"# {key}: {value}")
    for x, y in np.asarray(coords, dtype=np.float64):
        lines.append(f"{float(x)!r} {float(y)!r}")
    return "\n".join(lines) + "\n"


def load_points(path) -> tuple[np.ndarray, dict[str, str]]:
    with open(path, encoding="utf-8") as fh:
        return parse_points(fh.read())


def save_points(path, coords, meta: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_points(coords, meta))


def graph_to_json(graph: TDGraph) -> str:
    doc = {
        "format": GRAPH_FORMAT,
        "theta1": graph.shape.theta[0],
        "theta2": graph.shape.theta[1],
        "points": [[float(x), float(y)] for x, y in graph.points.coords],
        "cone_edges": sorted(
            [u, i, v] for u, i, v in graph.directed_edges()
        ),
    }
    return json.dumps(doc, indent=1)


def graph_from_json(text: str) -> TDGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "format" not in doc:
        raise GraphFormatError("missing format field")
    if doc["format"] != GRAPH_FORMAT:
        raise GraphFormatError(
            f"unsupported graph format {doc['format']!r}, expected {GRAPH_FORMAT!r}"
        )
    try:
        shape = canonical_triangle(float(doc["theta1"]), float(doc["theta2"]))
        coords = np.asarray(doc["points"], dtype=np.float64).reshape(-1, 2)
        triples = [(int(u), int(i), int(v)) for u, i, v in doc["cone_edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed graph document: {exc}") from None
    n = len(coords)
    cone_edges = np.full((n, 3), -1, dtype=np.int64)
    for u, i, v in triples:
        if not (0 <= u < n and 0 <= v < n and 1 <= i <= 3):
            raise GraphFormatError(f"edge triple out of range: {(u, i, v)}")
        if cone_edges[u, i - 1] >= 0:
            raise GraphFormatError(f"duplicate cone edge for vertex {u}, cone {i}")
        cone_edges[u, i - 1] = v
    pts = PointSet(coords, validated_for=shape)
    return TDGraph(shape, pts, cone_edges)


def load_graph(path) -> TDGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_json(fh.read())


def save_graph(path, graph: TDGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_to_json(graph))
        fh.write("\n")
