"""Approximation algorithms for the TSP on semimetric graphs.

* DMST  - double minimum spanning tree with shortcutting, factor 2*gamma;
* AB    - tree-cube (T^3) Hamiltonian cycle of the MST, factor (3b^2+b)/2;
* RAB   - AB with the lightest tree neighbour chosen at each split, factor (b^2+b)/2;
* PMCH  - Christofides with a perfect path matching, factor 3b^2/2;
* PCH   - Christofides with a plain matching and prioritised Euler walk, factor 3g/2.

Every "arbitrary" choice (root, starting edge, neighbour order, scan order)
is fixed to the smallest index so results are reproducible.
"""

from __future__ import annotations

import sys
import time
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .errors import EdgeNotInTree, TreeTooSmall
from .euler import eulerian_walk
from .graph import CompleteGraph, HamiltonianCycle, Multigraph, Tree, make_edge
from .matching import build_path_matching, min_weight_perfect_matching, resolve_conflicts
from .metric import MetricReport, classify, floyd_warshall
from .spanning import dfs_traversal, minimum_spanning_tree, shortcut


class Algorithm(str, Enum):
    DMST = "DMST"
    AB = "AB"
    RAB = "RAB"
    PMCH = "PMCH"
    PCH = "PCH"


ALGORITHMS = tuple(Algorithm)


def bound_factor(algo: Algorithm, report: MetricReport) -> float:
    """Worst-case ratio to the optimum guaranteed for ``algo`` at this graph's beta/gamma."""
    b, g = report.beta, report.gamma
    return {
        Algorithm.DMST: 2.0 * g,
        Algorithm.AB: (3.0 * b * b + b) / 2.0,
        Algorithm.RAB: (b * b + b) / 2.0,
        Algorithm.PMCH: 1.5 * b * b,
        Algorithm.PCH: 1.5 * g,
    }[Algorithm(algo)]


@dataclass(frozen=True)
class ApproxSolution:
    cycle: HamiltonianCycle
    weight: float
    algorithm: Algorithm
    bound_factor: float
    time_seconds: float = 0.0


# -- DMST ------------------------------------------------------------------

def dmst_order(g: CompleteGraph, root: int = 0) -> list[int]:
    t = minimum_spanning_tree(g)
    return shortcut(dfs_traversal(t, root))


# -- tree cube (AB, RAB) --------------------------------------------------

def _component(adj, verts, start, banned):
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u in verts and u not in comp and u != banned:
                comp.add(u)
                stack.append(u)
    return comp


def _path_avoiding_edge(cycle, x, y):
    """Hamiltonian path x..y obtained by deleting the cycle edge {x, y}."""
    m = len(cycle)
    k = cycle.index(x)
    if cycle[(k + 1) % m] == y:
        return [cycle[(k - t) % m] for t in range(m)]
    return [cycle[(k + t) % m] for t in range(m)]


def _t3(adj, verts, x1, x2, w, refined):
    parts = []
    comp1 = _component(adj, verts, x1, x2)
    comp2 = verts - comp1
    for x, comp in ((x1, comp1), (x2, comp2)):
        if len(comp) == 1:
            y = x
        else:
            nbrs = [u for u in adj[x] if u in comp]
            y = min(nbrs, key=lambda u: (w[x, u], u)) if refined else min(nbrs)
        if len(comp) >= 3:
            path = _path_avoiding_edge(_t3(adj, comp, x, y, w, refined), x, y)
        elif len(comp) == 2:
            path = [x, y]
        else:
            path = [x]
        parts.append(path)
    p1, p2 = parts
    # y1 .. x1 -> x2 .. y2, closed by the edge y2 -> y1
    return p1[::-1] + p2


def tree_cube_cycle(t: Tree, e, g: CompleteGraph, refined: bool = False) -> list[int]:
    """Hamiltonian cycle of the tree cube T^3 containing the tree edge ``e``.

    The tree is split at ``e = {x1, x2}``; in each half a tree neighbour
    ``y_i`` of ``x_i`` is chosen (smallest index, or lightest edge when
    ``refined``), the half is solved recursively with edge ``{x_i, y_i}`` and
    that edge is removed to leave a path; the two paths are joined by
    ``{x1, x2}`` and ``{y1, y2}``.  Every edge of the result joins vertices
    at tree distance at most 3.
    """
    verts = set(t.vertices)
    if len(verts) < 3:
        raise TreeTooSmall(f"tree has {len(verts)} vertices, need at least 3")
    x1, x2 = (int(v) for v in e)
    if make_edge(x1, x2) not in set(t.edges):
        raise EdgeNotInTree(f"edge {{{x1},{x2}}} is not a tree edge")
    limit = sys.getrecursionlimit()
    if limit < 4 * len(verts) + 200:
        sys.setrecursionlimit(4 * len(verts) + 200)
    return _t3(t.adjacency(), verts, x1, x2, g.weights, refined)


def ab_order(g: CompleteGraph, refined: bool = False) -> list[int]:
    t = minimum_spanning_tree(g)
    return tree_cube_cycle(t, t.edges[0], g, refined)


# -- path matching Christofides --------------------------------------------

def _remove_duplicates(seq: list[int]) -> list[int]:
    """Bypass repeated vertices of a closed walk until each vertex occurs once.

    The first repeated vertex ``x`` (in walk order) is examined at its first
    occurrence: a neighbour of that occurrence that is itself repeated is
    bypassed (predecessor first); otherwise the later occurrence of ``x`` is
    bypassed.
    """
    seq = list(seq)

    def collapse(s):
        out = [v for i, v in enumerate(s) if i == 0 or v != s[i - 1]]
        while len(out) > 1 and out[0] == out[-1]:
            out.pop()
        return out

    seq = collapse(seq)
    while True:
        count = Counter(seq)
        x = next((v for v in seq if count[v] > 1), None)
        if x is None:
            return seq
        m = len(seq)
        p = seq.index(x)
        prev_i, next_i = (p - 1) % m, (p + 1) % m
        if seq[prev_i] != x and count[seq[prev_i]] > 1:
            drop = prev_i
        elif seq[next_i] != x and count[seq[next_i]] > 1:
            drop = next_i
        else:
            drop = m - 1 - seq[::-1].index(x)
        seq = collapse(seq[:drop] + seq[drop + 1:])


def pmch_order(g: CompleteGraph) -> list[int]:
    t = minimum_spanning_tree(g)
    odd = t.odd_vertices()
    sp = floyd_warshall(g)
    pm = resolve_conflicts(build_path_matching(g, odd, sp), strict=False)

    # Each matching path is contracted to a virtual edge between its endpoints.
    by_ends = {}
    tagged = [(0, e) for e in t.edges]
    for p in pm.paths:
        key = make_edge(p[0], p[-1])
        by_ends[key] = p
        tagged.append((1, key))
    mg = Multigraph.from_edges(tagged, vertices=range(g.n))
    priority = [(1, k) for k in by_ends]
    start = min(odd)
    walk = eulerian_walk(mg, priority, start)

    # Re-expand into alternating segments of matching paths and tree walks.
    segments: list[tuple[str, list[int]]] = []
    for a, b, (tag, key) in zip(walk.vertices, walk.vertices[1:], walk.edge_trace):
        if tag == 1:
            p = list(by_ends[key])
            if p[0] != a:
                p.reverse()
            segments.append(("P", p))
        elif segments and segments[-1][0] == "Q":
            segments[-1][1].append(b)
        else:
            segments.append(("Q", [a, b]))

    # Tree walks: drop the vertex closest to the root when it is interior and
    # has tree degree above 3, unless that would remove its last occurrence.
    depth = t.distances_from(0)
    deg = t.degrees()
    occurrences = Counter(v for _, seg in segments for v in seg[1:])
    for kind, q in segments:
        if kind != "Q" or len(q) < 3:
            continue
        i = min(range(len(q)), key=lambda k: (depth[q[k]], k))
        if 0 < i < len(q) - 1 and deg[q[i]] > 3 and occurrences[q[i]] > 1:
            occurrences[q[i]] -= 1
            del q[i]

    eta = [start]
    for _, seg in segments:
        eta.extend(seg[1:])
    return _remove_duplicates(eta[:-1])


# -- polygonal Christofides ------------------------------------------------

def pch_order(g: CompleteGraph) -> list[int]:
    t = minimum_spanning_tree(g)
    odd = t.odd_vertices()
    m = min_weight_perfect_matching(g.weights, odd)
    tagged = [(0, e) for e in t.edges] + [(1, e) for e in m.edges]
    mg = Multigraph.from_edges(tagged, vertices=range(g.n))
    start = min(odd)
    walk = eulerian_walk(mg, [(1, e) for e in m.edges], start)
    return enhanced_shortcut(walk.vertices, walk.edge_trace, m.vertices(), g.n)


def enhanced_shortcut(verts, trace, matched, n) -> list[int]:
    """Hamiltonian cycle from an Euler walk that opens with a matching edge.

    Unmatched vertices are kept at their first appearance; a matched vertex
    is kept exactly where the walk enters or leaves it through its matching
    edge.  Matching edges are recognised by tag 1 in ``trace``.
    """
    def matching_step(k):
        return 0 <= k < len(trace) and trace[k][0] == 1

    order = [verts[0], verts[1]]
    placed = set(order)
    j = 2
    while len(order) < n:
        x = verts[j]
        if x not in matched:
            if x not in placed:
                order.append(x)
                placed.add(x)
        elif matching_step(j) or matching_step(j - 1):
            order.append(x)
            placed.add(x)
        j += 1
    return order


# -- drivers ---------------------------------------------------------------

_BUILDERS = {
    Algorithm.DMST: lambda g, root: dmst_order(g, root),
    Algorithm.AB: lambda g, root: ab_order(g, refined=False),
    Algorithm.RAB: lambda g, root: ab_order(g, refined=True),
    Algorithm.PMCH: lambda g, root: pmch_order(g),
    Algorithm.PCH: lambda g, root: pch_order(g),
}


def solve(g: CompleteGraph, algo, root: int = 0,
          report: MetricReport | None = None) -> ApproxSolution:
    """Run one algorithm; ``time_seconds`` covers the cycle construction only."""
    algo = Algorithm(algo)
    t0 = time.perf_counter()
    order = _BUILDERS[algo](g, root)
    elapsed = time.perf_counter() - t0
    if report is None:
        report = classify(g)
    cycle = HamiltonianCycle.from_order(g, order)
    return ApproxSolution(cycle, cycle.weight, algo, bound_factor(algo, report), elapsed)


def solve_dmst(g, root=0, report=None):
    return solve(g, Algorithm.DMST, root, report)


def solve_ab(g, report=None):
    return solve(g, Algorithm.AB, report=report)


def solve_rab(g, report=None):
    return solve(g, Algorithm.RAB, report=report)


def solve_pmch(g, report=None):
    return solve(g, Algorithm.PMCH, report=report)


def solve_pch(g, report=None):
    return solve(g, Algorithm.PCH, report=report)


def solve_all(g: CompleteGraph, root: int = 0,
              report: MetricReport | None = None) -> list[ApproxSolution]:
    if report is None:
        report = classify(g)
    return [solve(g, a, root, report) for a in ALGORITHMS]
