"""Complete weighted graphs, trees, multigraphs and Hamiltonian cycles.

Vertices are the integers ``0 .. n-1``.  The graph semimetric is
``d(x, y) = w({x, y})`` for ``x != y`` and ``0`` on the diagonal, so the
weight matrix doubles as the distance matrix.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AsymmetricWeights,
    IndexOutOfRange,
    InvalidGraph,
    NonpositiveWeight,
    NonzeroDiagonal,
    NotAPermutation,
    TooFewVertices,
)

Edge = tuple[int, int]


def make_edge(x: int, y: int) -> Edge:
    """Return the canonical (smaller index first) form of the edge ``{x, y}``."""
    if x == y:
        raise ValueError(f"loop at vertex {x} is not an edge")
    return (x, y) if x < y else (y, x)


@dataclass(frozen=True, eq=False)
class CompleteGraph:
    """Complete graph K_n with a symmetric, positive off-diagonal weight matrix.

    Use :func:`build_graph` to construct one; the constructor itself does not
    validate.  The stored matrix is read-only.
    """

    weights: np.ndarray

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def __repr__(self) -> str:
        return f"CompleteGraph(n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, CompleteGraph):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash(self.weights.tobytes())


def build_graph(weights) -> CompleteGraph:
    """Validate a square weight matrix and wrap it as a :class:`CompleteGraph`.

    Raises the matching :class:`~semitsp.errors.InvalidGraph` subclass naming
    the first offending index pair (diagonal checked first, then the upper
    triangle in row-major order).
    """
    try:
        w = np.array(weights, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidGraph(f"weights are not a numeric matrix: {exc}") from None
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise InvalidGraph(f"weight matrix must be square, got shape {w.shape}")
    n = w.shape[0]
    if n < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {n}")
    if not np.all(np.isfinite(w)):
        i, j = (int(a) for a in np.argwhere(~np.isfinite(w))[0])
        raise InvalidGraph(f"non-finite weight at ({i},{j})", (i, j))
    for i in range(n):
        if w[i, i] != 0.0:
            raise NonzeroDiagonal(f"diagonal entry ({i},{i}) is {w[i, i]!r}", (i, i))
    for i in range(n):
        for j in range(i + 1, n):
            if w[i, j] != w[j, i]:
                raise AsymmetricWeights(
                    f"w[{i}][{j}]={w[i, j]!r} differs from w[{j}][{i}]={w[j, i]!r}", (i, j)
                )
            if w[i, j] <= 0.0:
                raise NonpositiveWeight(f"weight at ({i},{j}) is {w[i, j]!r}", (i, j))
    w.setflags(write=False)
    return CompleteGraph(w)


def _check_vertex(g: CompleteGraph, x) -> int:
    if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
        raise IndexOutOfRange(f"vertex {x!r} is not an integer index")
    if not 0 <= x < g.n:
        raise IndexOutOfRange(f"vertex {x} outside [0, {g.n})")
    return int(x)


def edge_weight(g: CompleteGraph, x: int, y: int) -> float:
    """Graph semimetric d(x, y); zero when ``x == y``."""
    x = _check_vertex(g, x)
    y = _check_vertex(g, y)
    return 0.0 if x == y else float(g.weights[x, y])


def check_permutation(order: Sequence[int], n: int) -> list[int]:
    order = [int(v) for v in order]
    if len(order) != n or sorted(order) != list(range(n)):
        raise NotAPermutation(f"{order!r} is not a permutation of range({n})")
    return order


def cycle_weight(g: CompleteGraph, order: Sequence[int]) -> float:
    """Total weight of the Hamiltonian cycle visiting ``order`` and closing back."""
    order = check_permutation(order, g.n)
    w = g.weights
    total = 0.0
    for a, b in zip(order, order[1:] + order[:1]):
        total += w[a, b]
    return float(total)


def canonicalize_cycle(order: Sequence[int]) -> list[int]:
    """Pick the representative of a cycle among its 2n rotations and reversals.

    The representative starts at vertex 0 and has ``order[1] < order[-1]``.
    """
    order = check_permutation(order, len(order))
    k = order.index(0)
    rotated = order[k:] + order[:k]
    if len(rotated) > 2 and rotated[1] > rotated[-1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return rotated


@dataclass(frozen=True)
class HamiltonianCycle:
    order: tuple[int, ...]
    weight: float

    @classmethod
    def from_order(cls, g: CompleteGraph, order: Sequence[int]) -> "HamiltonianCycle":
        canon = canonicalize_cycle(order)
        return cls(tuple(canon), cycle_weight(g, canon))

    def edges(self) -> list[Edge]:
        o = self.order
        return [make_edge(a, b) for a, b in zip(o, o[1:] + o[:1])]


@dataclass(frozen=True)
class Tree:
    """Acyclic connected edge set over ``vertices``; edges kept sorted."""

    vertices: frozenset[int]
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices=None) -> "Tree":
        edges = tuple(sorted(make_edge(a, b) for a, b in edges))
        if vertices is None:
            vertices = {v for e in edges for v in e}
        return cls(frozenset(int(v) for v in vertices), edges)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def odd_vertices(self) -> list[int]:
        return sorted(v for v, d in self.degrees().items() if d % 2)

    def weight(self, g: CompleteGraph) -> float:
        return float(sum(g.weights[a, b] for a, b in self.edges))

    def is_valid(self) -> bool:
        """True when the edge set is a tree spanning exactly ``vertices``."""
        if len(self.edges) != len(self.vertices) - 1:
            return False
        if any(a not in self.vertices or b not in self.vertices for a, b in self.edges):
            return False
        if not self.vertices:
            return False
        adj = self.adjacency()
        start = min(self.vertices)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)

    def distances_from(self, root: int) -> dict[int, int]:
        """Number of tree edges between ``root`` and every vertex."""
        adj = self.adjacency()
        dist = {root: 0}
        stack = [root]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    stack.append(u)
        return dist


MultiEdge = tuple[int, Edge]


@dataclass(frozen=True)
class Multigraph:
    """Vertices plus tagged edges ``(tag, {x, y})``.

    Two multiedges may share an underlying edge only under distinct tags.
    By convention tag 0 marks tree edges and tag 1 matching edges.
    """

    vertices: frozenset[int]
    multiedges: tuple[MultiEdge, ...] = field(default=())

    @classmethod
    def from_edges(cls, tagged: Iterable[tuple[int, tuple[int, int]]], vertices=None):
        medges = []
        for tag, (a, b) in tagged:
            medges.append((int(tag), make_edge(int(a), int(b))))
        if len(set(medges)) != len(medges):
            raise ValueError("duplicate multiedge (same tag and endpoints)")
        if vertices is None:
            vertices = {v for _, e in medges for v in e}
        return cls(frozenset(vertices), tuple(medges))

    def degrees(self) -> dict[int, int]:
        deg: dict[int, int] = defaultdict(int)
        for v in self.vertices:
            deg[v] = 0
        for _, (a, b) in self.multiedges:
            deg[a] += 1
            deg[b] += 1
        return dict(deg)
