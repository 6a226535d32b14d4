"""Independent brute-force oracles used to check the library.

Nothing here imports the algorithms under test; each function derives its
answer by exhaustive enumeration directly from the weight matrix.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def all_simple_paths(n, a, b):
    inner = [v for v in range(n) if v not in (a, b)]
    for k in range(len(inner) + 1):
        for mid in itertools.permutations(inner, k):
            yield (a, *mid, b)


def path_weight(w, path):
    return float(sum(w[x, y] for x, y in zip(path, path[1:])))


def gamma_by_paths(w):
    """Largest ratio of a direct weight to the weight of any simple path."""
    n = len(w)
    best = 1.0
    for a, b in itertools.combinations(range(n), 2):
        shortest = min(path_weight(w, p) for p in all_simple_paths(n, a, b))
        best = max(best, w[a, b] / shortest)
    return best


def shortest_by_paths(w, a, b):
    return min(path_weight(w, p) for p in all_simple_paths(len(w), a, b))


def beta_by_triples(w):
    n = len(w)
    best = 1.0
    for x, y, z in itertools.permutations(range(n), 3):
        best = max(best, w[x, z] / (w[x, y] + w[y, z]))
    return best


def all_cycles(n):
    """Every Hamiltonian cycle of K_n once: start at 0, second < last."""
    for rest in itertools.permutations(range(1, n)):
        if rest[0] < rest[-1]:
            yield (0, *rest)


def tsp_by_enumeration(w):
    n = len(w)
    return min(path_weight(w, c + (c[0],)) for c in all_cycles(n))


def prufer_trees(n):
    """All n^(n-2) labelled trees on range(n), as edge lists."""
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for v in seq:
            degree[v] += 1
        edges = []
        for v in seq:
            leaf = min(u for u in range(n) if degree[u] == 1)
            edges.append((min(leaf, v), max(leaf, v)))
            degree[leaf] -= 1
            degree[v] -= 1
        u, v = [x for x in range(n) if degree[x] == 1]
        edges.append((u, v))
        yield edges


def mst_weight_by_enumeration(w):
    return min(sum(w[a, b] for a, b in t) for t in prufer_trees(len(w)))


def perfect_matchings(vertices):
    vertices = list(vertices)
    if not vertices:
        yield []
        return
    a = vertices[0]
    for k in range(1, len(vertices)):
        b = vertices[k]
        rest = vertices[1:k] + vertices[k + 1:]
        for m in perfect_matchings(rest):
            yield [(a, b)] + m


def matching_weight_by_enumeration(w, vertices):
    return min(sum(w[a, b] for a, b in m) for m in perfect_matchings(vertices))


def double_factorial(k):
    return math.prod(range(k - 1, 0, -2)) if k > 0 else 1


def tree_distance(edges, n):
    """All-pairs hop distance in a tree (BFS from every vertex)."""
    adj = {v: [] for v in range(n)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    dist = np.full((n, n), -1)
    for s in range(n):
        dist[s, s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in adj[v]:
                    if dist[s, u] < 0:
                        dist[s, u] = dist[s, v] + 1
                        nxt.append(u)
            frontier = nxt
    return dist
