"""
How far from metric is a weighted graph?
========================================

Builds a small semimetric graph, measures beta (relaxed triangle) and
gamma (relaxed polygon), and shows the shortest path that makes gamma bind.
"""

import numpy as np

from semitsp.graph import build_graph
from semitsp.metric import classify, floyd_warshall

# a unit path 0-1-2-3 with expensive chords
w = np.array([[0, 1, 3, 9],
              [1, 0, 1, 3],
              [3, 1, 0, 1],
              [9, 3, 1, 0]], dtype=float)
g = build_graph(w)

report = classify(g)
print("beta  =", report.beta)      # 9 / (1 + 3): no triple sees the 3-hop detour
print("gamma =", report.gamma)     # 9 / 3: the whole path undercuts the chord
print("metric?", report.is_metric)

sp = floyd_warshall(g)
print("shortest 0 -> 3:", sp.path(0, 3), "length", sp.dist[0, 3])

# the direct weights against the shortest-path closure
print(np.round(w / np.where(sp.dist > 0, sp.dist, 1), 3))
