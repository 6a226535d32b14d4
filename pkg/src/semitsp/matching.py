"""Perfect matchings and path matchings.

:func:`min_weight_perfect_matching` runs the blossom algorithm on reflected
weights; :func:`brute_force_matching` is the exhaustive check used in tests.
:func:`build_path_matching` and :func:`resolve_conflicts` produce the
vertex-disjoint family of shortest paths used by the path-matching variant of
Christofides' algorithm.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._blossom import max_weight_matching
from .errors import NotCycleFree, OddCardinality, OddVertexCount, SubsetTooLarge
from .graph import CompleteGraph, Edge, make_edge
from .metric import ShortestPathTable

BRUTE_FORCE_MATCHING_CAP = 12


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...]
    weight: float

    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def mate(self) -> dict[int, int]:
        out = {}
        for a, b in self.edges:
            out[a] = b
            out[b] = a
        return out


def _subset(weights, vertices) -> tuple[np.ndarray, list[int]]:
    w = np.asarray(weights, dtype=float)
    if vertices is None:
        vertices = range(w.shape[0])
    vertices = sorted(int(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise ValueError("repeated vertex in matching subset")
    if len(vertices) % 2:
        raise OddVertexCount(f"cannot perfectly match {len(vertices)} vertices")
    return w, vertices


def _as_matching(w, pairs) -> Matching:
    edges = tuple(sorted(make_edge(a, b) for a, b in pairs))
    return Matching(edges, float(sum(w[a, b] for a, b in edges)))


def min_weight_perfect_matching(weights, vertices: Sequence[int] | None = None) -> Matching:
    """Minimum-weight perfect matching on the complete graph over ``vertices``.

    ``weights`` is a square matrix indexed by original vertex ids; only the
    rows and columns listed in ``vertices`` (all of them by default) are used.
    Weights are reflected as ``c - w`` with ``c`` above the maximum so that a
    maximum-weight maximum-cardinality matching is a minimum-weight perfect
    one.
    """
    w, verts = _subset(weights, vertices)
    if not verts:
        return Matching((), 0.0)
    k = len(verts)
    sub = w[np.ix_(verts, verts)]
    c = float(sub.max()) + 1.0
    edges = [(i, j, c - sub[i, j]) for i in range(k) for j in range(i + 1, k)]
    mate = max_weight_matching(edges, maxcardinality=True)
    pairs = [(verts[i], verts[mate[i]]) for i in range(k) if i < mate[i]]
    if len(pairs) * 2 != k:
        raise RuntimeError("blossom returned a non-perfect matching")
    return _as_matching(w, pairs)


def brute_force_matching(weights, vertices: Sequence[int] | None = None,
                         cap: int = BRUTE_FORCE_MATCHING_CAP) -> Matching:
    """Exhaustive minimum over all (k-1)!! perfect matchings.

    The smallest remaining vertex is paired with each candidate in ascending
    order; the first optimum found is kept.
    """
    w, verts = _subset(weights, vertices)
    if len(verts) > cap:
        raise SubsetTooLarge(f"{len(verts)} vertices exceed the brute-force cap of {cap}")
    best = [math.inf, ()]

    def recurse(remaining, chosen, total):
        if total >= best[0]:
            return
        if not remaining:
            best[0], best[1] = total, tuple(chosen)
            return
        a = remaining[0]
        for idx in range(1, len(remaining)):
            b = remaining[idx]
            chosen.append((a, b))
            recurse(remaining[1:idx] + remaining[idx + 1:], chosen, total + w[a, b])
            chosen.pop()

    recurse(verts, [], 0.0)
    return _as_matching(w, best[1])


@dataclass(frozen=True)
class PathMatching:
    """Family of walks whose endpoints pair up a vertex set."""

    paths: tuple[tuple[int, ...], ...]

    def endpoints(self) -> list[int]:
        return [v for p in self.paths for v in (p[0], p[-1])]

    def pairs(self) -> set[frozenset]:
        return {frozenset((p[0], p[-1])) for p in self.paths}

    def weight(self, g: CompleteGraph) -> float:
        return float(sum(g.weights[a, b] for p in self.paths for a, b in zip(p, p[1:])))

    def is_vertex_disjoint(self) -> bool:
        seen = [v for p in self.paths for v in p]
        return len(seen) == len(set(seen))


def build_path_matching(g: CompleteGraph, odd: Sequence[int],
                        sp: ShortestPathTable) -> PathMatching:
    """Minimum-weight perfect path matching on ``odd``.

    Matches ``odd`` in the complete graph weighted by shortest-path distances,
    then expands each matched pair ``a < b`` into the stored shortest path.
    """
    odd = sorted(int(v) for v in odd)
    if len(odd) % 2:
        raise OddCardinality(f"odd-vertex set has {len(odd)} elements")
    if not odd:
        return PathMatching(())
    m = min_weight_perfect_matching(sp.dist, odd)
    return PathMatching(tuple(tuple(sp.path(a, b)) for a, b in m.edges))


def _union_has_cycle(paths) -> bool:
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen_edges = set()
    for p in paths:
        for a, b in zip(p, p[1:]):
            e = make_edge(a, b)
            if e in seen_edges:
                return True
            seen_edges.add(e)
            ra, rb = find(a), find(b)
            if ra == rb:
                return True
            parent[ra] = rb
    return False


def _bypass(path: list[int], x: int) -> list[int]:
    i = path.index(x)
    return path[:i] + path[i + 1:]


def resolve_conflicts(pm: PathMatching, strict: bool = True) -> PathMatching:
    """Make the paths of ``pm`` pairwise vertex-disjoint, keeping every endpoint pair.

    A conflict is a vertex lying on more than one path.  Repeatedly take the
    first path (in construction order) with exactly one conflict ``x``:
    bypass ``x`` there when it is internal, otherwise ``x`` is an endpoint of
    this path and internal to another one, which is split at ``x`` and
    rejoined around it.  The host graph is complete, so every bypass is an
    edge.

    With ``strict`` the union of the input paths must be a forest with no
    edge used twice (the situation a minimum path matching guarantees) and
    :class:`~semitsp.errors.NotCycleFree` is raised otherwise.  Without it a
    path with the fewest conflicts is processed whenever no single-conflict
    path exists, which still terminates.
    """
    paths = [list(p) for p in pm.paths]
    if strict and _union_has_cycle(paths):
        raise NotCycleFree("union of the paths contains a cycle")

    while True:
        count = Counter(v for p in paths for v in p)
        conflicts = [[v for v in p if count[v] > 1] for p in paths]
        candidates = [i for i, c in enumerate(conflicts) if c]
        if not candidates:
            break
        single = [i for i in candidates if len(conflicts[i]) == 1]
        if single:
            i = single[0]
        else:
            if strict:
                raise NotCycleFree("no path with exactly one conflict")
            i = min(candidates, key=lambda k: (len(conflicts[k]), k))
        x = conflicts[i][0]
        p = paths[i]
        if p[0] != x and p[-1] != x:
            paths[i] = _bypass(p, x)
        else:
            # x is an endpoint of p; endpoints are disjoint, so on every other
            # path through x it is internal.
            j = next(k for k, q in enumerate(paths) if k != i and x in q)
            paths[j] = _bypass(paths[j], x)
    return PathMatching(tuple(tuple(p) for p in paths))
