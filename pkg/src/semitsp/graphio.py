"""Reading and writing graph files.

Two formats are supported:

* plain text: the first line holds ``n``, followed by ``n`` whitespace
  separated rows of the weight matrix;
* JSON: ``{"n": <int>, "weights": [[...], ...]}``.

Floats are written with :func:`repr`, the shortest string that parses back to
the same double, so decimal inputs survive a round trip bit-exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidGraph
from .graph import CompleteGraph, build_graph


def _format_float(x: float) -> str:
    return repr(float(x))


def dumps_text(g: CompleteGraph) -> str:
    lines = [str(g.n)]
    for row in g.weights:
        lines.append(" ".join(_format_float(x) for x in row))
    return "\n".join(lines) + "\n"


def loads_text(text: str) -> CompleteGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidGraph("empty graph file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise InvalidGraph(f"first line must be the vertex count, got {lines[0]!r}") from None
    rows = lines[1:]
    if len(rows) != n:
        raise InvalidGraph(f"expected {n} matrix rows, found {len(rows)}")
    try:
        matrix = [[float(tok) for tok in row.split()] for row in rows]
    except ValueError as exc:
        raise InvalidGraph(f"malformed matrix entry: {exc}") from None
    if any(len(row) != n for row in matrix):
        raise InvalidGraph(f"every row must have {n} entries")
    return build_graph(matrix)


def dumps_json(g: CompleteGraph) -> str:
    return json.dumps({"n": g.n, "weights": g.weights.tolist()})


def loads_json(text: str) -> CompleteGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidGraph(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "weights" not in obj:
        raise InvalidGraph('JSON graph must be an object with a "weights" key')
    g = build_graph(obj["weights"])
    if "n" in obj and obj["n"] != g.n:
        raise InvalidGraph(f'"n"={obj["n"]!r} does not match the {g.n}x{g.n} matrix')
    return g


def read_graph(path) -> CompleteGraph:
    """Load a graph, choosing the format from the file extension (``.json`` or text)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidGraph(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InvalidGraph(f"{path} is not a text file") from None
    if path.suffix.lower() == ".json":
        return loads_json(text)
    return loads_text(text)


def write_graph(g: CompleteGraph, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(dumps_json(g) + "\n")
    else:
        path.write_text(dumps_text(g))
