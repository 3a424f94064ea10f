"""Command line entry point: ``nlroute generate|solve|oracle|bench``."""
from __future__ import annotations

import argparse
import sys

from . import graph as graphmod
from .bench import BenchmarkConfig, BenchmarkReport, BenchmarkRow, run_benchmark
from .errors import RoutingError
from .generators import GridSpec, generate_grid, generate_ratio_gadget
from .lattice import epsilon_for_target
from .objectives import deadline_guarantee, parse_objective
from .oracle import EnumerationConfig, exact_optimum
from .solver import DEFAULT_MEMORY_CAP, safe_hop_bound_for_budget, solve_budget_constrained, solve_hop_constrained


def _endpoint(text):
    if text is None:
        return None
    if "," in text:
        r, c = text.split(",")
        return int(r), int(c)
    return int(text)


def _seeds(text):
    seeds = []
    for part in text.split(","):
        lo, dash, hi = part.partition("-")
        seeds.extend(range(int(lo), int(hi) + 1) if dash else [int(lo)])
    return seeds


def _add_constraint(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--hops", type=int, help="hop bound gamma")
    g.add_argument("--budget", type=float, help="budget b on the extra weight column")


def _add_accuracy(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--epsilon", type=float)
    g.add_argument("--delta", type=float, help="target factor 1+delta (needs an objective with beta)")


def build_parser():
    parser = argparse.ArgumentParser(prog="nlroute", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic instance")
    gsub = gen.add_subparsers(dest="kind", required=True)
    grid = gsub.add_parser("grid")
    grid.add_argument("--rows", type=int, required=True)
    grid.add_argument("--cols", type=int, required=True)
    grid.add_argument("--low", type=float, default=0.1)
    grid.add_argument("--high", type=float, default=5.0)
    grid.add_argument("--criteria", type=int, default=2)
    grid.add_argument("--seed", type=int, default=0)
    grid.add_argument("--one-way", action="store_true")
    grid.add_argument("--out", required=True)
    gadget = gsub.add_parser("gadget")
    gadget.add_argument("--instance", required=True, help="base graph; its weights are ignored")
    gadget.add_argument("--source", type=int, required=True)
    gadget.add_argument("--lambda", dest="lam", type=float, default=1.0)
    gadget.add_argument("--out", required=True)

    for name in ("solve", "oracle"):
        p = sub.add_parser(name)
        p.add_argument("--instance", required=True)
        p.add_argument("--source", type=int, required=True)
        p.add_argument("--target", type=int, required=True)
        p.add_argument("--objective", required=True)
        _add_constraint(p)
        p.add_argument("--out", help="CSV report path")
        if name == "solve":
            _add_accuracy(p)
            p.add_argument("--memory-cap", type=int, default=DEFAULT_MEMORY_CAP)
            p.add_argument("--trace", help="per-iteration record counts (CSV)")
        else:
            p.add_argument("--max-walks", type=int, default=50_000_000)

    b = sub.add_parser("bench")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--grid", help="RxC bidirected grid regenerated per seed")
    src.add_argument("--instance", help="instance file in the native text format")
    src.add_argument("--tntp", help="TNTP network file")
    b.add_argument("--objective", required=True)
    _add_constraint(b)
    _add_accuracy(b)
    b.add_argument("--seed", type=int, default=0, help="first seed")
    b.add_argument("--runs", type=int, default=1, help="number of consecutive seeds")
    b.add_argument("--seeds", help="explicit seeds, e.g. 0-19 or 1,5,9")
    b.add_argument("--source", help="vertex index, or r,c on grids")
    b.add_argument("--target", help="vertex index, or r,c on grids")
    b.add_argument("--low", type=float, default=0.1)
    b.add_argument("--high", type=float, default=5.0)
    b.add_argument("--oracle", action="store_true", help="also run exhaustive enumeration")
    b.add_argument("--memory-cap", type=int, default=DEFAULT_MEMORY_CAP)
    b.add_argument("--out", help="CSV report path (stdout if omitted)")
    b.add_argument("--trace", help="per-seed, per-iteration record counts (CSV)")
    b.add_argument("--summary", action="store_true", help="append a seed-averaged row")
    b.add_argument("--no-timing", action="store_true",
                   help="leave runtime_s empty so repeated runs are byte-identical")
    return parser


def _emit(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_generate(args):
    if args.kind == "grid":
        spec = GridSpec(args.rows, args.cols, args.low, args.high, args.seed,
                        not args.one_way, args.criteria)
        g = generate_grid(spec)
    else:
        g = generate_ratio_gadget(graphmod.load(args.instance), args.source, args.lam)
    graphmod.dump(g, args.out)
    print(f"wrote {g.vertex_count} vertices, {g.edge_count} edges to {args.out}")


def _cmd_solve(args):
    g = graphmod.load(args.instance)
    objective, deadline = parse_objective(args.objective, g, args.source, args.target)
    gamma = args.hops if args.budget is None else safe_hop_bound_for_budget(g, args.source, args.target, args.budget)
    eps = args.epsilon
    if eps is None:
        if objective.lipschitz_beta is None:
            raise ValueError(f"objective {objective.name} declares no beta; use --epsilon")
        eps = epsilon_for_target(args.delta, objective.lipschitz_beta, objective.criteria_count, gamma)
    if args.budget is None:
        res = solve_hop_constrained(g, args.source, args.target, gamma, objective, eps, args.memory_cap)
    else:
        res = solve_budget_constrained(g, args.source, args.target, args.budget, objective, eps,
                                       args.memory_cap, gamma=gamma)
    alpha = res.guarantee_factor
    if deadline is not None and deadline.all_late:
        alpha = deadline_guarantee(eps, gamma, deadline.spec, res.best_value)
    print(f"value {res.best_value!r}")
    print(f"criteria {' '.join(repr(float(x)) for x in res.best_criteria)}")
    print(f"walk {' '.join(map(str, res.best_walk))}")
    print(f"hops {len(res.best_walk)} gamma {gamma} epsilon {eps!r} stored {res.stats.stored_records}")
    if args.trace:
        res.stats.write_trace(args.trace)
    if args.out:
        row = BenchmarkRow(g.name, 0, args.source, args.target, hops=gamma, alpha=alpha,
                           stored_paths=res.stats.stored_records, value=res.best_value)
        _emit(BenchmarkReport([row]).to_csv(timing=False), args.out)


def _cmd_oracle(args):
    g = graphmod.load(args.instance)
    objective, _ = parse_objective(args.objective, g, args.source, args.target)
    gamma = args.hops if args.budget is None else safe_hop_bound_for_budget(g, args.source, args.target, args.budget)
    walk, value = exact_optimum(g, args.source, args.target, EnumerationConfig(gamma, args.budget, args.max_walks), objective)
    print(f"value {value!r}")
    print(f"walk {' '.join(map(str, walk))}")
    if args.out:
        row = BenchmarkRow(g.name, 0, args.source, args.target, hops=gamma, oracle_value=value)
        _emit(BenchmarkReport([row]).to_csv(timing=False), args.out)


def _cmd_bench(args):
    if args.grid:
        source = f"grid:{args.grid}"
    elif args.tntp:
        source = f"tntp:{args.tntp}"
    else:
        source = f"instance:{args.instance}"
    seeds = _seeds(args.seeds) if args.seeds else list(range(args.seed, args.seed + args.runs))
    config = BenchmarkConfig(
        source=source, objective=args.objective, hops=args.hops, budget=args.budget,
        epsilon=args.epsilon, delta=args.delta, seeds=seeds, memory_cap=args.memory_cap,
        oracle=args.oracle, s=_endpoint(args.source), t=_endpoint(args.target),
        weight_low=args.low, weight_high=args.high,
    )
    report = run_benchmark(config)
    for r in report.rows:
        if r.error:
            print(f"seed {r.seed}: {r.error}", file=sys.stderr)
    _emit(report.to_csv(timing=not args.no_timing, summary=args.summary), args.out)
    if args.trace:
        _emit(report.trace_csv(), args.trace)


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = {"generate": _cmd_generate, "solve": _cmd_solve, "oracle": _cmd_oracle, "bench": _cmd_bench}
    try:
        handler[args.command](args)
    except (RoutingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
