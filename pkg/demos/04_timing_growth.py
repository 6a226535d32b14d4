"""
How running time grows with n
=============================

Times each algorithm on sizes 5..40 and fits a log-log slope.  Small sizes
are dominated by constant overheads, so expect slopes below the asymptotic
exponents.
"""

from semitsp.experiments import run_timing_experiment

table = run_timing_experiment(5, 40, instances_per_n=3, base_seed=0)

print("mean milliseconds per instance")
print("n   " + "".join(f"{a:>10s}" for a in table.algorithms))
for n, row in zip(table.ns, table.mean_seconds):
    if n % 5 == 0:
        print(f"{n:<4d}" + "".join(f"{t * 1e3:10.2f}" for t in row))

for algo in table.algorithms:
    print(f"{algo:5s} slope {table.loglog_slope(algo):.2f}")
print("fastest at n=40:", table.fastest_at(40))
