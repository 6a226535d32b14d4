"""Minimum spanning trees, depth-first tree traversals and shortcutting."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import MalformedTraversal, NotSpanning, RootNotInTree
from .graph import CompleteGraph, Tree, make_edge

LOWER_BOUND_RTOL = 1e-9


def minimum_spanning_tree(g: CompleteGraph) -> Tree:
    """Prim's algorithm grown from vertex 0, O(n^2) on the dense matrix.

    Equal-weight candidates are resolved in favour of the lexicographically
    smaller edge, so the output is deterministic.
    """
    n = g.n
    w = g.weights
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    key = w[0].copy()
    parent = np.zeros(n, dtype=np.int64)
    edges = []
    for _ in range(n - 1):
        masked = np.where(in_tree, np.inf, key)
        best = masked.min()
        ties = np.flatnonzero(masked == best)
        if ties.size == 1:
            v = int(ties[0])
        else:
            v = min(ties.tolist(), key=lambda u: make_edge(int(parent[u]), u))
        edges.append(make_edge(int(parent[v]), v))
        in_tree[v] = True
        row = w[v]
        lower = (row < key) & ~in_tree
        key[lower] = row[lower]
        parent[lower] = v
        # An equal-weight edge from v replaces the stored one when it is
        # lexicographically smaller.
        for u in np.flatnonzero((row == key) & ~in_tree & ~lower):
            u = int(u)
            if make_edge(v, u) < make_edge(int(parent[u]), u):
                parent[u] = v
    return Tree.from_edges(edges, vertices=range(n))


def check_spanning(g: CompleteGraph, t: Tree) -> None:
    if t.vertices != frozenset(range(g.n)) or not t.is_valid():
        raise NotSpanning(f"tree with {len(t.vertices)} vertices does not span K_{g.n}")


def tree_weight_lower_bound_check(g: CompleteGraph, t: Tree, exact_weight: float) -> bool:
    """Whether w(t) <= exact_weight, i.e. the spanning tree bounds the optimum from below."""
    check_spanning(g, t)
    return t.weight(g) <= exact_weight * (1.0 + LOWER_BOUND_RTOL)


def dfs_traversal(t: Tree, root: int = 0) -> tuple[int, ...]:
    """Depth-first walk over ``t`` recording each vertex on descent and on return.

    Children are visited in ascending index order.  The walk has
    ``2|V(t)| - 1`` entries and uses every edge exactly twice.
    """
    if root not in t.vertices:
        raise RootNotInTree(f"root {root} is not a vertex of the tree")
    adj = t.adjacency()
    walk = [root]
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        v, par, children = stack[-1]
        for c in children:
            if c != par:
                walk.append(c)
                stack.append((c, v, iter(adj[c])))
                break
        else:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
    return tuple(walk)


def shortcut(traversal: Sequence[int]) -> list[int]:
    """Keep the first appearance of every vertex in a closed traversal.

    The returned cycle order starts at the root; the implicit closing edge
    leads back to it.
    """
    traversal = [int(v) for v in traversal]
    if not traversal or traversal[0] != traversal[-1]:
        raise MalformedTraversal("a tree traversal must start and end at the root")
    if len(traversal) % 2 == 0:
        raise MalformedTraversal(f"traversal length {len(traversal)} is not 2k-1")
    if any(a == b for a, b in zip(traversal, traversal[1:])) and len(traversal) > 1:
        raise MalformedTraversal("consecutive repeated vertex in traversal")
    seen = set()
    order = []
    for v in traversal:
        if v not in seen:
            seen.add(v)
            order.append(v)
    if len(order) != (len(traversal) + 1) // 2:
        raise MalformedTraversal("traversal does not visit a tree edge exactly twice")
    return order
