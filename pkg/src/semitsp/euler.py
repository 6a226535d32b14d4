"""Eulerian walks on multigraphs with prioritised edges.

The walk is grown greedily from the start vertex.  At each step an unused
priority edge at the current vertex is preferred over any other edge; among
edges of equal priority the smallest neighbour (then the smallest tag) wins.
When the walk closes while edges remain, a closed sub-walk is grown from the
first walk vertex that still has unused edges and spliced in place of that
vertex's last appearance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BadStartVertex, DisconnectedMultigraph, OddDegreeVertex
from .graph import MultiEdge, Multigraph, make_edge


@dataclass(frozen=True)
class EulerianWalk:
    vertices: tuple[int, ...]
    edge_trace: tuple[MultiEdge, ...]


def _normalise(me) -> MultiEdge:
    tag, (a, b) = me
    return (int(tag), make_edge(int(a), int(b)))


def _check(mg: Multigraph, priority: set, start: int) -> None:
    deg = mg.degrees()
    for v in sorted(deg):
        if deg[v] % 2:
            raise OddDegreeVertex(f"vertex {v} has odd degree {deg[v]}")
    if start not in mg.vertices:
        raise BadStartVertex(f"start vertex {start} is not in the multigraph")
    unknown = priority - set(mg.multiedges)
    if unknown:
        raise ValueError(f"priority edges not in the multigraph: {sorted(unknown)}")
    if priority and not any(start in e for _, e in priority):
        raise BadStartVertex(f"start vertex {start} is not incident to a priority edge")
    adj: dict[int, set[int]] = {v: set() for v in mg.vertices}
    for _, (a, b) in mg.multiedges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v] - seen:
            seen.add(u)
            stack.append(u)
    if seen != set(mg.vertices):
        missing = min(set(mg.vertices) - seen)
        raise DisconnectedMultigraph(f"vertex {missing} is unreachable from {start}")


def eulerian_walk(mg: Multigraph, priority: Iterable[MultiEdge] = (),
                  start: int = 0) -> EulerianWalk:
    """Closed walk using every multiedge of ``mg`` exactly once."""
    priority = {_normalise(me) for me in priority}
    _check(mg, priority, start)

    # Incident multiedges per vertex in preference order.
    incident: dict[int, list[tuple[int, MultiEdge]]] = {v: [] for v in mg.vertices}
    for me in mg.multiedges:
        _, (a, b) = me
        incident[a].append((b, me))
        incident[b].append((a, me))
    for v, lst in incident.items():
        lst.sort(key=lambda item: (item[1] not in priority, item[0], item[1][0]))
    cursor = {v: 0 for v in mg.vertices}
    used: set[MultiEdge] = set()

    def next_edge(v):
        lst = incident[v]
        i = cursor[v]
        while i < len(lst) and lst[i][1] in used:
            i += 1
        cursor[v] = i
        return lst[i] if i < len(lst) else None

    def closed_walk(x):
        verts, trace = [x], []
        while True:
            step = next_edge(verts[-1])
            if step is None:
                return verts, trace
            y, me = step
            used.add(me)
            verts.append(y)
            trace.append(me)

    verts, trace = closed_walk(start)
    while len(used) < len(mg.multiedges):
        pos_x = next(i for i, v in enumerate(verts) if next_edge(v) is not None)
        x = verts[pos_x]
        sub_verts, sub_trace = closed_walk(x)
        last = len(verts) - 1 - verts[::-1].index(x)
        # verts[last] becomes the whole sub-walk; trace entries before
        # position `last` are the edges leading into it.
        verts = verts[:last] + sub_verts + verts[last + 1:]
        trace = trace[:last] + sub_trace + trace[last:]
    return EulerianWalk(tuple(verts), tuple(trace))
