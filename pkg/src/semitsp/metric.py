"""Semimetric relaxation constants and all-pairs shortest paths.

``beta`` is the smallest constant with ``d(x,z) <= beta*(d(x,y) + d(y,z))``
for all triples; ``gamma`` the smallest with
``d(x_1,x_k) <= gamma * sum d(x_i, x_{i+1})`` for all chains.  Because all
weights are positive the worst chain between two vertices is a shortest path,
so ``gamma`` is the largest ratio of a direct weight to the shortest-path
distance between the same endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import CompleteGraph

# Relative slack when deciding which first hops lie on a shortest path.
_TIGHT_RTOL = 1e-12
METRIC_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ShortestPathTable:
    dist: np.ndarray
    next_hop: np.ndarray

    def path(self, i: int, j: int) -> list[int]:
        """Vertices of the stored shortest path from ``i`` to ``j`` (inclusive)."""
        path = [i]
        n = self.dist.shape[0]
        while path[-1] != j:
            path.append(int(self.next_hop[path[-1], j]))
            if len(path) > n:
                raise RuntimeError(f"next-hop table loops on pair ({i},{j})")
        return path


def floyd_warshall(g: CompleteGraph) -> ShortestPathTable:
    """All-pairs shortest paths.

    Among equally short paths the reconstructed one has the lexicographically
    smallest sequence of intermediate vertices: the direct edge when it is
    itself shortest, otherwise the smallest admissible first hop.
    """
    w = g.weights
    n = g.n
    dist = w.copy()
    for k in range(n):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    dist = np.minimum(dist, dist.T)
    np.fill_diagonal(dist, 0.0)

    # via[k, j] = w(i, k) + dist(k, j): length of the best i->j path whose
    # first hop is k.  Processed one source row at a time to keep memory O(n^2).
    idx = np.arange(n)
    next_hop = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        via = w[i, :, None] + dist
        tight = via <= dist[i][None, :] * (1.0 + _TIGHT_RTOL)
        tight[i, :] = False
        hop = np.argmax(tight, axis=0)
        direct = tight[idx, idx]
        next_hop[i] = np.where(direct, idx, hop)
        next_hop[i, i] = i
    dist.setflags(write=False)
    next_hop.setflags(write=False)
    return ShortestPathTable(dist, next_hop)


def compute_beta(g: CompleteGraph) -> float:
    """Smallest beta >= 1 satisfying the relaxed triangle inequality on ``g``."""
    w = g.weights
    n = g.n
    off = ~np.eye(n, dtype=bool)
    best = 1.0
    for y in range(n):
        denom = w[:, y, None] + w[None, y, :]
        mask = off.copy()
        mask[y, :] = False
        mask[:, y] = False
        if mask.any():
            best = max(best, float(np.max(w[mask] / denom[mask])))
    return best


def compute_gamma(g: CompleteGraph, sp: ShortestPathTable | None = None) -> float:
    """Smallest gamma >= 1 satisfying the relaxed polygon inequality on ``g``."""
    if sp is None:
        sp = floyd_warshall(g)
    off = ~np.eye(g.n, dtype=bool)
    return max(1.0, float(np.max(g.weights[off] / sp.dist[off])))


@dataclass(frozen=True)
class MetricReport:
    beta: float
    gamma: float
    is_metric: bool

    def as_dict(self) -> dict:
        return {"beta": self.beta, "gamma": self.gamma, "is_metric": self.is_metric}


def classify(g: CompleteGraph) -> MetricReport:
    beta = compute_beta(g)
    gamma = compute_gamma(g)
    return MetricReport(beta, gamma, beta - 1.0 <= METRIC_TOL)
