"""Exact TSP solvers used as ground truth: enumeration and Held-Karp."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import InstanceTooLarge
from .graph import CompleteGraph, HamiltonianCycle, canonicalize_cycle, cycle_weight

BRUTE_FORCE_CAP = 12
HELD_KARP_CAP = 20


class ExactMethod(str, Enum):
    BRUTE_FORCE = "BruteForce"
    HELD_KARP = "HeldKarp"


@dataclass(frozen=True)
class ExactSolution:
    cycle: HamiltonianCycle
    weight: float
    method: ExactMethod


@lru_cache(maxsize=4)
def _lex_permutations(m: int) -> np.ndarray:
    """All permutations of ``range(m)`` in lexicographic order, one per row."""
    perms = np.zeros((1, 0), dtype=np.int8)
    for size in range(1, m + 1):
        # Extend permutations of range(size-1) by choosing the leading element
        # first and relabelling the tail, which keeps lexicographic order.
        blocks = []
        for lead in range(size):
            tail = perms + (perms >= lead)
            head = np.full((tail.shape[0], 1), lead, dtype=np.int8)
            blocks.append(np.hstack([head, tail.astype(np.int8)]))
        perms = np.vstack(blocks)
    perms.setflags(write=False)
    return perms


def canonical_tours(n: int):
    """Yield blocks of canonical tours of K_n in lexicographic order.

    Each tour starts at vertex 0 and satisfies ``tour[1] < tour[-1]``, so
    every Hamiltonian cycle appears exactly once: (n-1)!/2 tours in total.
    Blocks are grouped by the second vertex to bound memory.
    """
    if n == 3:
        yield np.array([[0, 1, 2]], dtype=np.int64)
        return
    inner = _lex_permutations(n - 2)
    for second in range(1, n):
        rest = np.array([v for v in range(1, n) if v != second], dtype=np.int64)
        body = rest[inner]
        keep = body[:, -1] > second
        body = body[keep]
        if body.shape[0] == 0:
            continue
        block = np.empty((body.shape[0], n), dtype=np.int64)
        block[:, 0] = 0
        block[:, 1] = second
        block[:, 2:] = body
        yield block


def brute_force(g: CompleteGraph, cap: int = BRUTE_FORCE_CAP) -> ExactSolution:
    """Minimum Hamiltonian cycle by exhaustive enumeration of canonical tours.

    Among equal-weight optima the lexicographically smallest canonical order
    is returned.
    """
    n = g.n
    if n > cap:
        raise InstanceTooLarge(n, cap)
    w = g.weights
    best_weight = math.inf
    best_order = None
    for block in canonical_tours(n):
        totals = np.zeros(block.shape[0])
        for i in range(n):
            totals += w[block[:, i], block[:, (i + 1) % n]]
        k = int(np.argmin(totals))
        if totals[k] < best_weight:
            best_weight = float(totals[k])
            best_order = block[k].tolist()
    cycle = HamiltonianCycle(tuple(best_order), cycle_weight(g, best_order))
    return ExactSolution(cycle, cycle.weight, ExactMethod.BRUTE_FORCE)


def held_karp(g: CompleteGraph, cap: int = HELD_KARP_CAP) -> ExactSolution:
    """Held-Karp dynamic programme over subsets of ``{1, ..., n-1}``.

    ``cost[S, x]`` is the weight of the cheapest path that leaves vertex 0,
    visits exactly the vertices of ``S`` and ends at ``x`` (``x`` not in ``S``).
    Vertex ``v`` of the original graph is bit ``v-1`` of ``S``.  Subsets are
    processed by increasing population count; argmin ties go to the smallest
    vertex index.
    """
    n = g.n
    if n > cap:
        raise InstanceTooLarge(n, cap)
    m = n - 1
    w = g.weights
    inner = w[1:, 1:]
    full = (1 << m) - 1

    cost = np.full((1 << m, m), np.inf)
    parent = np.full((1 << m, m), -1, dtype=np.int8)
    cost[0, :] = w[0, 1:]

    masks = np.arange(1 << m)
    popcount = np.zeros(1 << m, dtype=np.int64)
    for b in range(m):
        popcount += (masks >> b) & 1
    for size in range(1, m):
        layer = masks[popcount == size]
        for y in range(m):
            has_y = layer[(layer >> y) & 1 == 1]
            if has_y.size == 0:
                continue
            cand = cost[has_y ^ (1 << y), y][:, None] + inner[y][None, :]
            better = cand < cost[has_y]
            cost[has_y] = np.where(better, cand, cost[has_y])
            parent[has_y] = np.where(better, y, parent[has_y])

    best_weight = math.inf
    last = -1
    for x in range(m):
        total = cost[full ^ (1 << x), x] + w[x + 1, 0]
        if total < best_weight:
            best_weight = total
            last = x

    path = []
    mask, x = full ^ (1 << last), last
    while x != -1:
        path.append(x + 1)
        prev = int(parent[mask, x])
        if prev != -1:
            mask ^= 1 << prev
        x = prev
    order = canonicalize_cycle([0] + path[::-1])
    cycle = HamiltonianCycle(tuple(order), cycle_weight(g, order))
    return ExactSolution(cycle, cycle.weight, ExactMethod.HELD_KARP)
