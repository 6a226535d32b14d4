"""Random instances and the quality / timing experiment harnesses.

Seeding
-------
Every instance gets its own 64-bit seed derived from the experiment's base
seed with :class:`numpy.random.SeedSequence`::

    seed_i = SeedSequence([base_seed, i]).generate_state(1, uint64)[0]

and the instance is drawn from ``numpy.random.Generator(PCG64(seed_i))``.
Both are platform independent, so a (base seed, config) pair reproduces the
same graphs and the same CSV bytes on any machine.
"""

from __future__ import annotations

import csv
import io
import math
import os
import statistics
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .approx import ALGORITHMS, Algorithm, ab_order, dmst_order, pch_order, pmch_order, solve
from .errors import BadConfig, EmptyRecords
from .exact import held_karp
from .graph import CompleteGraph, build_graph
from .metric import classify, compute_gamma

SEED_ENV = "SEMITSP_SEED"
QUALITY_EXACT_CAP = 16
EXACT = "EXACT"
CSV_FIELDS = ("instance_id", "algorithm", "n", "seed", "weight", "time_seconds",
              "beta", "gamma", "bound_factor", "exact_weight")
_ALGO_RANK = {a.value: i for i, a in enumerate(ALGORITHMS)} | {EXACT: len(ALGORITHMS)}


class Model(str, Enum):
    UNIFORM = "UniformWeights"
    EUCLIDEAN = "EuclideanPoints"
    GAMMA = "GammaControlled"


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    seed: int = 0
    model: Model = Model.UNIFORM
    w_min: float = 0.01
    w_max: float = 1.0
    target_gamma: float = 2.0

    def validate(self) -> "GeneratorConfig":
        try:
            model = Model(self.model)
        except ValueError:
            raise BadConfig(f"unknown model {self.model!r}") from None
        if not isinstance(self.n, (int, np.integer)) or self.n < 3:
            raise BadConfig(f"n must be an integer >= 3, got {self.n!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise BadConfig(f"seed must fit in 64 unsigned bits, got {self.seed!r}")
        if not 0 < self.w_min < self.w_max or not math.isfinite(self.w_max):
            raise BadConfig(f"need 0 < w_min < w_max, got {self.w_min!r}, {self.w_max!r}")
        if not self.target_gamma >= 1.0 or not math.isfinite(self.target_gamma):
            raise BadConfig(f"target_gamma must be >= 1, got {self.target_gamma!r}")
        return replace(self, model=model, n=int(self.n), seed=int(self.seed))


def instance_seed(base_seed: int, index: int) -> int:
    """Seed of instance ``index`` in an experiment with ``base_seed``."""
    ss = np.random.SeedSequence([int(base_seed), int(index)])
    return int(ss.generate_state(1, np.uint64)[0])


def _symmetric(upper: np.ndarray) -> np.ndarray:
    w = np.triu(upper, 1)
    return w + w.T


def _euclidean(rng, n) -> np.ndarray:
    while True:
        pts = rng.random((n, 2))
        diff = pts[:, None, :] - pts[None, :, :]
        w = np.sqrt((diff ** 2).sum(axis=2))
        w = np.minimum(w, w.T)
        np.fill_diagonal(w, 0.0)
        if np.all(w[~np.eye(n, dtype=bool)] > 0):
            return w


def _gamma_controlled(rng, cfg) -> CompleteGraph:
    base = _euclidean(rng, cfg.n)
    noise = _symmetric(rng.standard_normal((cfg.n, cfg.n)))
    target = cfg.target_gamma

    def make(s):
        return build_graph(base * np.exp(s * noise))

    def close(gam):
        return abs(gam - target) <= 0.05 * target

    g = make(0.0)
    gam = compute_gamma(g)
    if close(gam):
        return g
    lo, hi = 0.0, 0.5
    for _ in range(60):
        g = make(hi)
        gam = compute_gamma(g)
        if close(gam):
            return g
        if gam > target:
            break
        lo, hi = hi, 2 * hi
    else:
        raise BadConfig(f"could not reach gamma={target}")
    # gamma is continuous in the noise scale, so bisection finds the band.
    for _ in range(200):
        mid = (lo + hi) / 2
        g = make(mid)
        gam = compute_gamma(g)
        if close(gam):
            return g
        if gam < target:
            lo = mid
        else:
            hi = mid
    raise BadConfig(f"could not reach gamma={target}")


def generate_random_graph(cfg: GeneratorConfig) -> CompleteGraph:
    """Deterministic random instance for ``(cfg.seed, cfg.n, cfg.model)``.

    * UniformWeights: i.i.d. uniform weights in ``[w_min, w_max)``;
    * EuclideanPoints: distances between uniform points of the unit square;
    * GammaControlled: a Euclidean instance whose weights are multiplied by
      ``exp(s * Z)`` (``Z`` symmetric standard normal), with the scale ``s``
      bisected until gamma lies within 5% of ``target_gamma``.
    """
    cfg = cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    if cfg.model is Model.UNIFORM:
        return build_graph(_symmetric(rng.uniform(cfg.w_min, cfg.w_max, (cfg.n, cfg.n))))
    if cfg.model is Model.EUCLIDEAN:
        return build_graph(_euclidean(rng, cfg.n))
    return _gamma_controlled(rng, cfg)


@dataclass(frozen=True)
class ExperimentRecord:
    instance_id: str
    algorithm: str
    n: int
    seed: int
    weight: float
    time_seconds: float
    beta: float
    gamma: float
    bound_factor: float
    exact_weight: float | None = None
    order: tuple[int, ...] = field(default=(), compare=False)

    def row(self) -> list[str]:
        def f(x):
            return "" if x is None else repr(float(x))

        return [self.instance_id, self.algorithm, str(self.n), str(self.seed),
                f(self.weight), f(self.time_seconds), f(self.beta), f(self.gamma),
                f(self.bound_factor), f(self.exact_weight)]


def resolve_base_seed(base_seed: int) -> int:
    env = os.environ.get(SEED_ENV)
    if env is None or not env.strip():
        return int(base_seed)
    try:
        return int(env)
    except ValueError:
        raise BadConfig(f"{SEED_ENV}={env!r} is not an integer") from None


def _instance_records(instance_id, cfg, timed, exact_cap) -> list[ExperimentRecord]:
    g = generate_random_graph(cfg)
    report = classify(g)
    exact = held_karp(g) if g.n <= exact_cap else None
    exact_weight = exact.weight if exact else None
    records = []
    for algo in ALGORITHMS:
        sol = solve(g, algo, report=report)
        records.append(ExperimentRecord(
            instance_id, algo.value, g.n, cfg.seed, sol.weight,
            sol.time_seconds if timed else 0.0, report.beta, report.gamma,
            sol.bound_factor, exact_weight, sol.cycle.order))
    if exact is not None:
        records.append(ExperimentRecord(
            instance_id, EXACT, g.n, cfg.seed, exact.weight, 0.0, report.beta,
            report.gamma, 1.0, exact_weight, exact.cycle.order))
    return records


def _sort_key(rec: ExperimentRecord):
    return rec.instance_id, _ALGO_RANK.get(rec.algorithm, 99), rec.algorithm


def run_quality_experiment(n: int, instances: int, base_seed: int = 0,
                           models: Sequence[Model] = (Model.UNIFORM,), *,
                           timed: bool = False, exact_cap: int = QUALITY_EXACT_CAP,
                           workers: int = 1, **cfg_kwargs) -> list[ExperimentRecord]:
    """Run all five algorithms (plus Held-Karp when ``n <= exact_cap``) per instance.

    Instance ``i`` of model ``m`` is named ``"<m>-<i:04d>"`` and seeded with
    ``instance_seed(base_seed, i)``.  ``time_seconds`` is left at 0 unless
    ``timed`` so that the output is byte-for-byte reproducible.
    """
    if instances < 1:
        raise BadConfig("instances must be >= 1")
    jobs = []
    for model in models:
        model = Model(model)
        for i in range(instances):
            cfg = GeneratorConfig(n, instance_seed(base_seed, i), model, **cfg_kwargs)
            jobs.append((f"{model.value}-{i:04d}", cfg.validate(), timed, exact_cap))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_instance_records, *zip(*jobs)))
    else:
        chunks = [_instance_records(*job) for job in jobs]
    return sorted((r for chunk in chunks for r in chunk), key=_sort_key)


def summarize(records: Iterable[ExperimentRecord]) -> dict[str, dict[str, float]]:
    """Mean, median, min and max weight per algorithm."""
    by_algo: dict[str, list[float]] = {}
    for r in records:
        by_algo.setdefault(r.algorithm, []).append(r.weight)
    out = {}
    for algo in sorted(by_algo, key=lambda a: _ALGO_RANK.get(a, 99)):
        ws = by_algo[algo]
        out[algo] = {"mean": statistics.fmean(ws), "median": statistics.median(ws),
                     "min": min(ws), "max": max(ws)}
    return out


@dataclass(frozen=True, eq=False)
class TimingTable:
    ns: tuple[int, ...]
    algorithms: tuple[str, ...]
    mean_seconds: np.ndarray  # shape (len(ns), len(algorithms))

    def column(self, algo) -> np.ndarray:
        return self.mean_seconds[:, self.algorithms.index(Algorithm(algo).value)]

    def fastest_at(self, n: int) -> str:
        row = self.mean_seconds[self.ns.index(n)]
        return self.algorithms[int(np.argmin(row))]

    def loglog_slope(self, algo, n_from: int | None = None) -> float:
        """Least-squares slope of log(mean time) against log(n)."""
        ns = np.array(self.ns, dtype=float)
        ys = self.column(algo)
        keep = ns >= (n_from or 0)
        return float(np.polyfit(np.log(ns[keep]), np.log(ys[keep]), 1)[0])


def run_timing_experiment(n_min: int, n_max: int, instances_per_n: int,
                          base_seed: int = 0, model: Model = Model.UNIFORM,
                          progress=None) -> TimingTable:
    """Mean wall time of each algorithm for every ``n`` in ``[n_min, n_max]``.

    Runs serially; instance ``i`` of size ``n`` uses seed
    ``instance_seed(base_seed, n * 1_000_000 + i)``.
    """
    if not 3 <= n_min <= n_max:
        raise BadConfig(f"need 3 <= n_min <= n_max, got {n_min}, {n_max}")
    if instances_per_n < 1:
        raise BadConfig("instances_per_n must be >= 1")
    ns = tuple(range(n_min, n_max + 1))
    means = np.zeros((len(ns), len(ALGORITHMS)))
    for row, n in enumerate(ns):
        totals = np.zeros(len(ALGORITHMS))
        for i in range(instances_per_n):
            cfg = GeneratorConfig(n, instance_seed(base_seed, n * 1_000_000 + i), model)
            g = generate_random_graph(cfg)
            for col, algo in enumerate(ALGORITHMS):
                t0 = time.perf_counter()
                _BUILD_ONLY[algo](g)
                totals[col] += time.perf_counter() - t0
        means[row] = totals / instances_per_n
        if progress is not None:
            progress(n, means[row])
    return TimingTable(ns, tuple(a.value for a in ALGORITHMS), means)


_BUILD_ONLY = {
    Algorithm.DMST: dmst_order,
    Algorithm.AB: lambda g: ab_order(g, refined=False),
    Algorithm.RAB: lambda g: ab_order(g, refined=True),
    Algorithm.PMCH: pmch_order,
    Algorithm.PCH: pch_order,
}


# -- output ------------------------------------------------------------------

def records_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_FIELDS)
    for r in records:
        writer.writerow(r.row())
    return buf.getvalue()


def timing_csv(table: TimingTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(("n",) + table.algorithms)
    for n, row in zip(table.ns, table.mean_seconds):
        writer.writerow([str(n)] + [repr(float(x)) for x in row])
    return buf.getvalue()


def emit_plot_data(data, out_dir) -> list[Path]:
    """Write long-form CSV plus one ``series_<ALGO>.csv`` per algorithm.

    ``data`` is either a list of :class:`ExperimentRecord` (series x = instance
    id, y = weight) or a :class:`TimingTable` (x = n, y = mean seconds).
    Returns the written paths.
    """
    out = Path(out_dir)
    if isinstance(data, TimingTable):
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / "timing.csv"]
        paths[0].write_text(timing_csv(data))
        for algo in data.algorithms:
            p = out / f"series_{algo}.csv"
            buf = io.StringIO()
            writer = csv.writer(buf)
            writer.writerow(("n", "mean_seconds"))
            for n, y in zip(data.ns, data.column(algo)):
                writer.writerow([str(n), repr(float(y))])
            p.write_text(buf.getvalue())
            paths.append(p)
        return paths

    records = list(data)
    if not records:
        raise EmptyRecords("no records to emit")
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "records.csv"]
    paths[0].write_text(records_csv(records))
    algos = sorted({r.algorithm for r in records}, key=lambda a: _ALGO_RANK.get(a, 99))
    for algo in algos:
        p = out / f"series_{algo}.csv"
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(("instance_id", "weight"))
        for r in records:
            if r.algorithm == algo:
                writer.writerow([r.instance_id, repr(float(r.weight))])
        p.write_text(buf.getvalue())
        paths.append(p)
    return paths
