"""Command-line front end: ``semitsp {generate,analyze,solve,exact,compare,bench}``.

Exit codes: 0 success, 1 usage error, 2 domain error (invalid graph,
instance too large, bad configuration).  Results go to stdout, diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .approx import ALGORITHMS, solve
from .errors import BadConfig, SemiTSPError
from .exact import BRUTE_FORCE_CAP, HELD_KARP_CAP, brute_force, held_karp
from .experiments import (
    CSV_FIELDS,
    QUALITY_EXACT_CAP,
    GeneratorConfig,
    Model,
    emit_plot_data,
    generate_random_graph,
    records_csv,
    resolve_base_seed,
    run_quality_experiment,
    run_timing_experiment,
    summarize,
    timing_csv,
)
from .graphio import dumps_json, dumps_text, read_graph, write_graph
from .metric import classify


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


_MODELS = {"uniform": Model.UNIFORM, "euclidean": Model.EUCLIDEAN, "gamma": Model.GAMMA}
_ALGOS = {a.value.lower(): a for a in ALGORITHMS}


def _build_parser() -> _Parser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv", "table"), default="json")

    p = _Parser(prog="semitsp", description="TSP approximation on semimetric graphs")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random instance", parents=[fmt])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--model", choices=sorted(_MODELS), default="uniform")
    g.add_argument("--w-min", type=float, default=0.01)
    g.add_argument("--w-max", type=float, default=1.0)
    g.add_argument("--target-gamma", type=float, default=2.0)
    g.add_argument("--out", help="output file (.json or text matrix); stdout if omitted")

    a = sub.add_parser("analyze", help="print beta, gamma and metricity", parents=[fmt])
    a.add_argument("file")

    s = sub.add_parser("solve", help="run an approximation algorithm", parents=[fmt])
    s.add_argument("--algo", choices=sorted(_ALGOS) + ["all"], default="pch")
    s.add_argument("--root", type=int, default=0, help="DFS root for dmst")
    s.add_argument("file")

    e = sub.add_parser("exact", help="solve exactly", parents=[fmt])
    e.add_argument("--method", choices=("brute", "heldkarp"), default="heldkarp")
    e.add_argument("--cap", type=int, default=None)
    e.add_argument("file")

    c = sub.add_parser("compare", help="all algorithms plus the exact optimum", parents=[fmt])
    c.add_argument("--root", type=int, default=0)
    c.add_argument("file")

    b = sub.add_parser("bench", help="quality or timing experiment", parents=[fmt])
    mode = b.add_mutually_exclusive_group(required=True)
    mode.add_argument("--quality", action="store_true")
    mode.add_argument("--timing", action="store_true")
    b.add_argument("--config", help="JSON file with any of the options below")
    b.add_argument("--n", type=int, help="instance size (quality) or largest size (timing)")
    b.add_argument("--n-min", type=int, help="smallest size for --timing (default 5)")
    b.add_argument("--instances", type=int, help="instances per size")
    b.add_argument("--seed", type=int, help="base seed (SEMITSP_SEED overrides)")
    b.add_argument("--model", action="append", choices=sorted(_MODELS))
    b.add_argument("--timed", action="store_true", help="record wall times in quality rows")
    b.add_argument("--exact-cap", type=int)
    b.add_argument("--out-dir", help="write CSV and per-algorithm series files here")
    return p


def _emit(obj, fmt: str, out) -> None:
    """Print a dict or list of flat dicts as JSON, CSV or an aligned table."""
    if fmt == "json":
        out.write(json.dumps(obj) + "\n")
        return
    rows = obj if isinstance(obj, list) else [obj]
    cols = list(rows[0].keys())
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(cols)
        writer.writerows(cells)
        out.write(buf.getvalue())
        return
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    line = " | ".join(c.ljust(w) for c, w in zip(cols, widths))
    out.write(line + "\n" + "-+-".join("-" * w for w in widths) + "\n")
    for row in cells:
        out.write(" | ".join(v.ljust(w) for v, w in zip(row, widths)) + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(str(x) for x in v) + ")"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _solution_dict(sol) -> dict:
    return {"algo": sol.algorithm.value.lower(), "order": list(sol.cycle.order),
            "weight": sol.weight, "bound_factor": sol.bound_factor,
            "time_ms": sol.time_seconds * 1000.0}


def _cmd_generate(args, out):
    cfg = GeneratorConfig(args.n, args.seed, _MODELS[args.model], args.w_min,
                          args.w_max, args.target_gamma)
    g = generate_random_graph(cfg)
    if args.out:
        write_graph(g, args.out)
        print(f"wrote K_{g.n} to {args.out}", file=sys.stderr)
    else:
        out.write(dumps_json(g) + "\n" if args.format == "json" else dumps_text(g))


def _cmd_analyze(args, out):
    _emit(classify(read_graph(args.file)).as_dict(), args.format, out)


def _cmd_solve(args, out):
    g = read_graph(args.file)
    report = classify(g)
    algos = ALGORITHMS if args.algo == "all" else (_ALGOS[args.algo],)
    sols = [_solution_dict(solve(g, a, args.root, report)) for a in algos]
    _emit(sols if args.algo == "all" else sols[0], args.format, out)


def _run_exact(g, method, cap=None):
    if method == "brute":
        return brute_force(g, BRUTE_FORCE_CAP if cap is None else cap)
    return held_karp(g, HELD_KARP_CAP if cap is None else cap)


def _cmd_exact(args, out):
    g = read_graph(args.file)
    sol = _run_exact(g, args.method, args.cap)
    _emit({"order": list(sol.cycle.order), "weight": sol.weight,
           "method": sol.method.value}, args.format, out)


def _cmd_compare(args, out):
    g = read_graph(args.file)
    report = classify(g)
    rows = []
    for a in ALGORITHMS:
        sol = solve(g, a, args.root, report)
        rows.append({"algorithm": a.value, "cycle": list(sol.cycle.order),
                     "weight": sol.weight, "bound_factor": sol.bound_factor})
    if g.n <= HELD_KARP_CAP:
        ex = held_karp(g)
        rows.append({"algorithm": "EXACT", "cycle": list(ex.cycle.order),
                     "weight": ex.weight, "bound_factor": 1.0})
    else:
        print(f"n={g.n} exceeds the Held-Karp cap; exact row omitted", file=sys.stderr)
    _emit(rows, args.format, out)


def _bench_options(args) -> dict:
    opts = {}
    if args.config:
        try:
            opts = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise BadConfig(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(opts, dict):
            raise BadConfig("config file must hold a JSON object")
    for key in ("n", "n_min", "instances", "seed", "exact_cap", "out_dir"):
        val = getattr(args, key)
        if val is not None:
            opts[key] = val
    if args.model:
        opts["models"] = args.model
    if args.timed:
        opts["timed"] = True
    return opts


def _cmd_bench(args, out):
    opts = _bench_options(args)
    unknown = set(opts) - {"n", "n_min", "instances", "seed", "exact_cap", "out_dir",
                           "models", "timed"}
    if unknown:
        raise BadConfig(f"unknown config keys: {sorted(unknown)}")
    seed = resolve_base_seed(opts.get("seed", 0))
    try:
        models = [_MODELS[m] for m in opts.get("models", ["uniform"])]
    except (KeyError, TypeError):
        raise BadConfig(f"models must be a subset of {sorted(_MODELS)}") from None
    out_dir = opts.get("out_dir")

    if args.quality:
        records = run_quality_experiment(
            int(opts.get("n", 75)), int(opts.get("instances", 45)), seed, models,
            timed=bool(opts.get("timed", False)),
            exact_cap=int(opts.get("exact_cap", QUALITY_EXACT_CAP)))
        for algo, stats in summarize(records).items():
            print(f"{algo:5s} mean={stats['mean']:.4f} median={stats['median']:.4f} "
                  f"min={stats['min']:.4f} max={stats['max']:.4f}", file=sys.stderr)
        if out_dir:
            for path in emit_plot_data(records, out_dir):
                print(f"wrote {path}", file=sys.stderr)
        elif args.format == "json":
            rows = [dict(zip(CSV_FIELDS, r.row())) for r in records]
            out.write(json.dumps(rows) + "\n")
        else:
            out.write(records_csv(records))
    else:
        n_max = int(opts.get("n", 100))
        table = run_timing_experiment(int(opts.get("n_min", 5)), n_max,
                                      int(opts.get("instances", 100)), seed, models[0])
        if out_dir:
            for path in emit_plot_data(table, out_dir):
                print(f"wrote {path}", file=sys.stderr)
        else:
            out.write(timing_csv(table))


_COMMANDS = {
    "generate": _cmd_generate,
    "analyze": _cmd_analyze,
    "solve": _cmd_solve,
    "exact": _cmd_exact,
    "compare": _cmd_compare,
    "bench": _cmd_bench,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    try:
        _COMMANDS[args.command](args, out)
    except SemiTSPError as exc:
        print(f"semitsp: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"semitsp: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
