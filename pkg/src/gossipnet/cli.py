"""Command-line front end.

Subcommands: ``enumerate``, ``clustering``, ``threshold``, ``sweep-m``,
``sweep-clustering``. Tables are written as CSV (LF newlines, six
significant digits, empty field for "no threshold"). Whenever ``--out`` is
given, a JSON sidecar ``<out>.json`` records the resolved configuration and
a summary of the results.

Exit codes: 0 success, 2 bad parameters, 3 I/O failure, 4 capacity guard,
5 random graph generation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from pathlib import Path

from . import graph6
from .canon import GraphSetEntry, canonical_key, enumerate_k_regular_connected
from .errors import CapacityError, DegenerateRegressionError, GenerationError, Graph6ParseError, InvalidParameterError
from .experiment import RunConfig, ThresholdResult, run_curves, sweep_clustering, sweep_m, sweep_ols, threshold_from_curves
from .game import PayoffMatrix
from .graphs import average_clustering, triangle_counts

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_IO = 3
EXIT_CAPACITY = 4
EXIT_GENERATION = 5

CURVE_HEADER = ["r", "coop_mean", "cheat_mean"]
SWEEP_M_HEADER = ["m", "model", "r_star"]
SWEEP_CLUSTERING_HEADER = ["graph_id", "chi", "m", "r_star"]
CLUSTERING_HEADER = ["graph_id", "chi", "triangles"]

# flags that change how fast a command runs but never what it writes
_NOT_RECORDED = {"threads", "out", "config", "command", "func"}


def fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.6g}"


def _int_list(text: str) -> list[int]:
    """Parse ``"1,2,5-7"`` into ``[1, 2, 5, 6, 7]``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty list: {text!r}")
    return out


def _models(text: str) -> list[str]:
    names = ["vanilla", "gossip"] if text == "both" else [s.strip() for s in text.split(",")]
    for name in names:
        if name not in ("vanilla", "gossip"):
            raise argparse.ArgumentTypeError(f"unknown model {name!r}")
    return names


def _payoffs(args) -> PayoffMatrix:
    p = PayoffMatrix(args.pcc, args.pcd, args.pdc, args.pdd)
    for broken in p.dilemma_violations():
        warnings.warn(f"payoff matrix breaks the dilemma condition {broken}", stacklevel=2)
    return p


def _write_table(rows, header, out):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _emit(buf.getvalue(), out)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_bytes(text.encode("utf-8"))


def _sidecar(args, summary):
    if args.out is None:
        return
    config = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_RECORDED}
    record = {"command": args.command, "config": config, "summary": summary}
    text = json.dumps(record, indent=2, sort_keys=True) + "\n"
    Path(str(args.out) + ".json").write_bytes(text.encode("utf-8"))


def _report(line, args):
    print(line, file=sys.stdout if args.out is not None else sys.stderr)


def _load_set(path) -> list[GraphSetEntry]:
    graphs = graph6.read_graph6(path)
    if not graphs:
        raise InvalidParameterError(f"{path}: no graphs")
    return [GraphSetEntry(g, canonical_key(g), average_clustering(g)) for g in graphs]


def cmd_enumerate(args):
    entries = enumerate_k_regular_connected(args.n, args.k)
    _emit("".join(e.canonical_key + "\n" for e in entries), args.out)
    _sidecar(args, {"count": len(entries)})
    _report(f"{len(entries)} graphs", args)


def cmd_clustering(args):
    rows = []
    chis = []
    for e in _load_set(args.graphs):
        tri = triangle_counts(e.graph)
        rows.append([e.canonical_key, fmt(e.chi), " ".join(str(int(t)) for t in tri)])
        chis.append(e.chi)
    _write_table(rows, CLUSTERING_HEADER, args.out)
    _sidecar(args, {"count": len(rows), "chi_min": fmt(min(chis)), "chi_max": fmt(max(chis))})


def _threshold_cfg(args, model, m):
    source = "complete"
    if args.graphs is not None:
        source = "fixed"
    elif model == "gossip":
        source = "random"
    return RunConfig(model=model, n=args.n, k=args.k, m=m, payoffs=_payoffs(args), horizon_r=args.horizon,
                     runs=args.runs, master_seed=args.seed, graph_source=source)


def _fixed_graph(args):
    if args.graphs is None:
        return None
    graphs = graph6.read_graph6(args.graphs)
    if not 0 <= args.graph_index < len(graphs):
        raise InvalidParameterError(f"--graph-index {args.graph_index} out of range for {len(graphs)} graphs")
    g = graphs[args.graph_index]
    if g.node_count != args.n:
        raise InvalidParameterError(f"graph has {g.node_count} nodes but --n is {args.n}")
    return g


def cmd_threshold(args):
    cfg = _threshold_cfg(args, args.model, args.m)
    curves = run_curves(cfg, _fixed_graph(args), threads=args.threads)
    rows = [[fmt(r), fmt(c), fmt(d)] for r, c, d in zip(curves.r, curves.coop_mean, curves.cheat_mean)]
    _write_table(rows, CURVE_HEADER, args.out)
    th = threshold_from_curves(curves)
    if cfg.m == 0:
        # nobody to lose to: cooperation pays from the first recorded step
        th = ThresholdResult(float(curves.r[0]), 1)
    _sidecar(args, {"r_star": fmt(th.r_star), "steps": cfg.steps})
    _report(f"r_star={fmt(th.r_star)}", args)


def cmd_sweep_m(args):
    ms = args.m if args.m is not None else list(range(1, args.n))
    graph = _fixed_graph(args)
    rows = []
    summary = {}
    for model in args.model:
        cfg = _threshold_cfg(args, model, ms[0])
        results = sweep_m(cfg, ms, graph, threads=args.threads)
        for m, th in results:
            rows.append([str(m), model, fmt(th.r_star)])
        summary[model] = {str(m): fmt(th.r_star) for m, th in results}
    _write_table(rows, SWEEP_M_HEADER, args.out)
    _sidecar(args, summary)


def cmd_sweep_clustering(args):
    entries = _load_set(args.graphs)
    shapes = {(e.graph.node_count, e.graph.regular_degree()) for e in entries}
    if len(shapes) != 1 or None in {d for _, d in shapes}:
        raise InvalidParameterError(f"{args.graphs}: graphs must all be regular with one size and degree, got {sorted(shapes, key=str)}")
    n, k = shapes.pop()
    template = RunConfig(model=args.model, n=n, k=k, m=1, payoffs=_payoffs(args), horizon_r=args.horizon,
                         runs=args.runs, master_seed=args.seed, graph_source="fixed")
    rows = []
    fits = {}
    for m in args.m:
        records = sweep_clustering(entries, m, template, threads=args.threads)
        rows.extend([rec.graph_id, fmt(rec.chi), str(rec.m), fmt(rec.threshold.r_star)] for rec in records)
        try:
            fit = sweep_ols(records)
            fits[str(m)] = {"slope": fit.slope, "intercept": fit.intercept, "r_squared": fit.r_squared,
                            "n_points": fit.n_points, "n_excluded": fit.n_excluded}
        except DegenerateRegressionError as exc:
            fits[str(m)] = {"error": str(exc)}
        _report(f"m={m} ols " + json.dumps(fits[str(m)], sort_keys=True), args)
    _write_table(rows, SWEEP_CLUSTERING_HEADER, args.out)
    _sidecar(args, {"ols": fits})


def _add_payoff_flags(p):
    p.add_argument("--pcc", type=float, default=1.0, help="payoff when both cooperate")
    p.add_argument("--pcd", type=float, default=-1.6, help="payoff to a cooperator whose partner cheats")
    p.add_argument("--pdc", type=float, default=1.5, help="payoff to a cheater whose partner cooperates")
    p.add_argument("--pdd", type=float, default=0.0, help="payoff when both cheat")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _add_threads_flag(p):
    p.add_argument("--threads", type=_positive_int, default=1, help="worker threads (does not change output)")


def _add_run_flags(p, runs=1000):
    p.add_argument("--runs", type=int, default=runs)
    p.add_argument("--horizon", type=float, default=50.0, help="plays per agent to simulate")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    _add_threads_flag(p)
    _add_payoff_flags(p)


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gossipnet", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", help="JSON file of flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="connected k-regular graphs, one per isomorphism class, as graph6")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--out")
    _add_threads_flag(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("clustering", help="clustering coefficient and triangle counts per graph")
    p.add_argument("--graphs", required=True)
    p.add_argument("--out")
    _add_threads_flag(p)
    p.set_defaults(func=cmd_clustering)

    p = sub.add_parser("threshold", help="payoff curves and cooperation threshold")
    p.add_argument("--model", choices=["vanilla", "gossip"], default="vanilla")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--graphs", help="graph6 file; play on one of its graphs instead of random ones")
    p.add_argument("--graph-index", type=int, default=0)
    p.add_argument("--out")
    _add_run_flags(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("sweep-m", help="threshold for each cheater count")
    p.add_argument("--model", type=_models, default=["vanilla"], help="vanilla, gossip, both, or a comma list")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--m", type=_int_list, help="cheater counts, e.g. 1-8 (default 1..n-1)")
    p.add_argument("--graphs")
    p.add_argument("--graph-index", type=int, default=0)
    p.add_argument("--out")
    _add_run_flags(p)
    p.set_defaults(func=cmd_sweep_m)

    p = sub.add_parser("sweep-clustering", help="threshold on every graph of a set, plus a linear fit")
    p.add_argument("--graphs", required=True)
    p.add_argument("--m", type=_int_list, default=[1])
    p.add_argument("--model", choices=["vanilla", "gossip"], default="gossip")
    p.add_argument("--out")
    _add_run_flags(p)
    p.set_defaults(func=cmd_sweep_clustering)

    if defaults:
        for p in sub.choices.values():
            dests = {a.dest for a in p._actions}
            p.set_defaults(**{k: v for k, v in defaults.items() if k in dests})
        everything = set().union(*({a.dest for a in p._actions} for p in sub.choices.values()))
        unknown = set(defaults) - everything - {"config"}
        if unknown:
            parser.error(f"unknown keys in --config: {sorted(unknown)}")
    return parser


def parse_args(argv=None):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    defaults = {}
    if known.config:
        try:
            defaults = json.loads(Path(known.config).read_text())
        except (OSError, ValueError) as exc:
            build_parser().error(f"cannot read --config: {exc}")
        if not isinstance(defaults, dict):
            build_parser().error("--config must hold a JSON object")
    return build_parser(defaults).parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        args.func(args)
    except (InvalidParameterError, DegenerateRegressionError, Graph6ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
