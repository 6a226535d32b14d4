"""
Five tours on one random instance
=================================

Runs every approximation algorithm on a seeded random graph, next to the
Held-Karp optimum, and prints each tour's ratio and its guaranteed factor.
"""

from semitsp.approx import solve_all
from semitsp.exact import held_karp
from semitsp.experiments import GeneratorConfig, Model, generate_random_graph
from semitsp.metric import classify

g = generate_random_graph(GeneratorConfig(n=12, seed=2024, model=Model.UNIFORM))
report = classify(g)
print(f"K_{g.n}: beta={report.beta:.3f} gamma={report.gamma:.3f}")

opt = held_karp(g)
print(f"{'EXACT':5s} {opt.weight:8.4f}  {opt.cycle.order}")

for sol in solve_all(g, report=report):
    ratio = sol.weight / opt.weight
    print(f"{sol.algorithm.value:5s} {sol.weight:8.4f}  ratio {ratio:5.3f}"
          f"  factor {sol.bound_factor:9.2f}  {sol.time_seconds * 1e3:6.2f} ms")
