"""
Tour quality under three random models
======================================

A scaled-down quality experiment: 10 instances of K_40 per model, with the
mean weight of each algorithm.  Uniform weights are far from metric,
Euclidean points are metric, and the gamma-controlled model sits between.
"""

import sys
from pathlib import Path

from semitsp.experiments import Model, emit_plot_data, run_quality_experiment, summarize

for model in Model:
    records = run_quality_experiment(40, 10, base_seed=1, models=[model])
    stats = summarize(records)
    line = "  ".join(f"{algo} {s['mean']:.3f}" for algo, s in stats.items())
    print(f"{model.value:16s} {line}")

# plot data for the last model, if an output directory is given
if len(sys.argv) > 1:
    for p in emit_plot_data(records, Path(sys.argv[1])):
        print("wrote", p)
