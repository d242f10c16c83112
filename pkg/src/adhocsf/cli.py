"""Command-line front end.

    adhocsf grow     --n 10000 --m 3 --mu 0 --tau-j 2 --kc none --seed 1 --out g.edges
    adhocsf search   --graph g.edges --algo FL,NF,RW --ttl 1..8 --m 3 --out q.csv
    adhocsf degdist  --graph g.edges --binning log
    adhocsf analytic --m 1 --kc 50
    adhocsf sweep    configs/fig2.json
    adhocsf audit    g.edges --kc 50
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import solve_master_equation
from .edgelist import EdgeListError, format_edgelist, read_edgelist, write_atomic
from .graph import GraphError
from .growth import GrowthParams, grow
from .harness import (ExperimentSpec, aggregate, evaluate_queries, fmt, provenance,
                      rows_to_csv, run_sweep, sample_queries)
from .metrics import components, degree_distribution, fit_power_law
from .rng import search_rng

QUERY_COLUMNS = ["algo", "ttl", "query_id", "source", "target", "covered", "messages",
                 "success", "hops_to_target", "budget"]
SUMMARY_COLUMNS = ["algo", "ttl", "n_queries", "mean_covered", "success_rate",
                   "mean_messages", "mean_budget"]


def parse_kc(text: str) -> int | None:
    if text.lower() in ("none", "inf", "unbounded"):
        return None
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("k_c must be >= 1 or 'none'")
    return value


def parse_int_list(text: str) -> list[int]:
    """``"1,2,5"`` or ``"1..8"`` (inclusive) or a mix such as ``"0,2..4"``."""
    out: list[int] = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


def _dist_csv(dist, comments) -> str:
    rows = [{"k": k, "count": c, "p_k": c / dist.n_live} for k, c in sorted(dist.counts.items())]
    return rows_to_csv(rows, ["k", "count", "p_k"], comments)


def cmd_grow(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        params = GrowthParams(mu=args.mu, tau_j=args.tau_j, tau_l=args.tau_l, k_c=args.kc,
                              m=args.m, n_target=args.n, seed=args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    g, trace = grow(params)
    head = provenance("grow", **params.as_dict())
    _emit(format_edgelist(g, [head]), args.out)
    trace_csv = rows_to_csv([dict(params.as_dict(), **trace.as_dict(), edges=g.edge_count)],
                            list(params.as_dict()) + list(trace.as_dict()) + ["edges"], [head])
    dist_csv = _dist_csv(degree_distribution(g), [head])
    if args.out and args.out != "-":
        stem = Path(args.out)
        write_atomic(stem.with_suffix(".trace.csv"), trace_csv)
        write_atomic(stem.with_suffix(".degdist.csv"), dist_csv)
    else:
        sys.stderr.write(trace_csv)
    return 0


def cmd_search(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    g = read_edgelist(args.graph)
    algos = [a.strip().upper() for a in args.algo.split(",") if a.strip()]
    bad = [a for a in algos if a not in ("FL", "NF", "RW")]
    if bad:
        parser.error(f"unknown algorithm(s): {', '.join(bad)}")
    ttls = sorted(set(parse_int_list(args.ttl)))
    rng = search_rng(args.seed)
    if args.source is not None:
        if args.source not in g:
            parser.error(f"source {args.source} is not in the graph")
        target = None if args.target is None else args.target
        pairs = [(args.source, target)] * args.queries
    else:
        pairs = sample_queries(g, components(g).giant, args.queries, rng)
    records = evaluate_queries(g, pairs, algos, ttls, args.m, rng)
    head = provenance("search", graph=Path(args.graph).name, algo=",".join(algos),
                      ttl=args.ttl, m=args.m, queries=args.queries, seed=args.seed)
    rows = [vars(r) for r in records]
    _emit(rows_to_csv(rows, QUERY_COLUMNS, [head]), args.out)
    summary = [dict(algo=a, ttl=t, **v) for (a, t), v in aggregate(records).items()]
    summary_text = rows_to_csv(summary, SUMMARY_COLUMNS, [head])
    if args.summary:
        write_atomic(args.summary, summary_text)
    elif args.out and args.out != "-":
        sys.stderr.write(summary_text)
    return 0


def cmd_degdist(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    g = read_edgelist(args.graph)
    dist = degree_distribution(g, args.binning)
    head = provenance("degdist", graph=Path(args.graph).name, binning=args.binning)
    if args.binning == "log":
        rows = [{"k_lo": lo, "k_hi": hi, "density": d} for lo, hi, d in dist.log_binned()]
        text = rows_to_csv(rows, ["k_lo", "k_hi", "density"], [head])
        text += "# raw counts\n" + _dist_csv(dist, [])
    else:
        text = _dist_csv(dist, [head])
    _emit(text, args.out)
    if args.fit:
        k_min, k_max = args.fit
        fit = fit_power_law(dist, k_min, k_max)
        fit_text = rows_to_csv([vars(fit)], ["gamma_hat", "stderr", "k_min", "k_max"], [head])
        if args.fit_out:
            write_atomic(args.fit_out, fit_text)
        else:
            sys.stderr.write(fit_text)
    comp = components(g)
    comp_text = rows_to_csv([{"n_components": comp.n_components, "giant_fraction": comp.giant_fraction,
                              "isolated": comp.isolated_nodes}],
                            ["n_components", "giant_fraction", "isolated"], [head])
    if args.components_out:
        write_atomic(args.components_out, comp_text)
    return 0


def cmd_analytic(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.kc is None or args.kc <= args.m:
        parser.error("analytic needs a bounded --kc greater than --m")
    sol = solve_master_equation(args.m, args.kc, args.tol)
    head = provenance("analytic", m=args.m, kc=args.kc, tol=args.tol)
    rows = [{"k": k, "n_k": v} for k, v in sol.n.items()]
    text = rows_to_csv(rows, ["k", "n_k"], [head])
    text += f"# nu={fmt(sol.nu)} bulk_exponent={fmt(sol.bulk_exponent)}\n"
    _emit(text, args.out)
    return 0


def cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    spec = ExperimentSpec.load(args.config)
    if args.output_dir:
        spec.output_dir = args.output_dir
    out, failed = run_sweep(spec, args.workers)
    print(f"wrote {out} ({len(failed)} failed run(s))")
    return 1 if failed else 0


def cmd_audit(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    g = read_edgelist(args.graph)
    problems = []
    try:
        g.audit()
    except GraphError as exc:
        problems.append(str(exc))
    if args.kc is not None and g.max_degree() > args.kc:
        over = sum(1 for u in g.nodes() if g.degree(u) > args.kc)
        problems.append(f"{over} node(s) above k_c={args.kc}")
    if args.min_degree is not None:
        under = sum(1 for u in g.nodes() if g.degree(u) < args.min_degree)
        if under:
            problems.append(f"{under} node(s) below degree {args.min_degree}")
    comp = components(g)
    print(f"nodes={g.live_count} edges={g.edge_count} max_degree={g.max_degree()} "
          f"components={comp.n_components} giant_fraction={comp.giant_fraction:.6f} "
          f"isolated={comp.isolated_nodes}")
    for p in problems:
        print(f"FAIL {p}")
    if not problems:
        print("OK")
    return 1 if problems else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adhocsf", description=__doc__.splitlines()[0] if __doc__ else None)
    p.add_argument("--version", action="version", version=f"adhocsf {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grow", help="grow one topology")
    g.add_argument("--n", type=int, required=True, help="target live node count")
    g.add_argument("--m", type=int, default=1, help="minimum degree (stubs per join)")
    g.add_argument("--mu", type=float, default=0.0, help="leave probability per step")
    g.add_argument("--tau-j", type=int, default=2, help="join horizon in hops")
    g.add_argument("--tau-l", type=int, default=0, help="leave horizon in hops")
    g.add_argument("--kc", type=parse_kc, default=None, help="hard cutoff or 'none'")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="edge-list path (stdout if omitted); also writes .trace.csv and .degdist.csv")
    g.set_defaults(func=cmd_grow)

    s = sub.add_parser("search", help="run FL/NF/RW queries on an edge list")
    s.add_argument("--graph", required=True)
    s.add_argument("--algo", default="FL,NF,RW")
    s.add_argument("--ttl", default="1..8", help="TTL list, e.g. 1,2,3 or 1..8")
    s.add_argument("--m", type=int, default=1, help="NF fan-out (the network's minimum degree)")
    s.add_argument("--queries", type=int, default=1000)
    s.add_argument("--source", type=int, help="fix the source node (default: random giant-component pairs)")
    s.add_argument("--target", type=int, help="target for a fixed source (default: none)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="per-query CSV (stdout if omitted)")
    s.add_argument("--summary", help="aggregated CSV per (algo, ttl)")
    s.set_defaults(func=cmd_search)

    d = sub.add_parser("degdist", help="degree distribution, power-law fit and components")
    d.add_argument("--graph", required=True)
    d.add_argument("--binning", choices=["raw", "log"], default="raw")
    d.add_argument("--fit", type=int, nargs=2, metavar=("K_MIN", "K_MAX"))
    d.add_argument("--fit-out")
    d.add_argument("--components-out")
    d.add_argument("--out")
    d.set_defaults(func=cmd_degdist)

    a = sub.add_parser("analytic", help="master-equation solution with a hard cutoff")
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--kc", type=parse_kc, required=True)
    a.add_argument("--tol", type=float, default=1e-12)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analytic)

    w = sub.add_parser("sweep", help="run a JSON-configured parameter sweep")
    w.add_argument("config")
    w.add_argument("--workers", type=int, help="override worker count (env ADHOCSF_WORKERS)")
    w.add_argument("--output-dir")
    w.set_defaults(func=cmd_sweep)

    u = sub.add_parser("audit", help="check the invariants of an edge-list file")
    u.add_argument("graph")
    u.add_argument("--kc", type=parse_kc, default=None)
    u.add_argument("--min-degree", type=int)
    u.set_defaults(func=cmd_audit)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, parser)
    except (EdgeListError, OSError) as exc:
        print(f"adhocsf: error: {exc}", file=sys.stderr)
        return 1
