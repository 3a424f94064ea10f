"""Seeded benchmark runs producing CSV reports."""
from __future__ import annotations

import io
import csv
import time
from dataclasses import dataclass, field
from statistics import fmean

from .errors import RoutingError
from .generators import GridSpec, generate_grid, rng_for
from .graph import Graph, load
from .lattice import epsilon_for_target
from .baselines import hop_distances
from .objectives import deadline_guarantee, parse_objective
from .oracle import EnumerationConfig, exact_optimum
from .solver import DEFAULT_MEMORY_CAP, solve_budget_constrained, solve_hop_constrained, safe_hop_bound_for_budget
from .tntp import load_tntp

CSV_COLUMNS = ["network", "hops", "alpha", "stored_paths", "runtime_s", "value", "oracle_value", "accuracy"]


@dataclass
class BenchmarkConfig:
    """One batch of runs.

    ``source`` is ``grid:<rows>x<cols>``, ``tntp:<path>`` or ``instance:<path>``.
    Exactly one of ``hops``/``budget`` and one of ``epsilon``/``delta`` is set.
    Endpoints default to opposite grid corners, or a seeded draw on networks.
    """

    source: str
    objective: str
    hops: int | None = None
    budget: float | None = None
    epsilon: float | None = None
    delta: float | None = None
    seeds: list[int] = field(default_factory=lambda: [0])
    memory_cap: int = DEFAULT_MEMORY_CAP
    oracle: bool = False
    oracle_max_walks: int = 50_000_000
    s: int | tuple[int, int] | None = None
    t: int | tuple[int, int] | None = None
    weight_low: float = 0.1
    weight_high: float = 5.0

    def __post_init__(self):
        if (self.hops is None) == (self.budget is None):
            raise ValueError("set exactly one of hops or budget")
        if (self.epsilon is None) == (self.delta is None):
            raise ValueError("set exactly one of epsilon or delta")


@dataclass
class BenchmarkRow:
    network: str
    seed: int
    s: int
    t: int
    hops: int | None = None
    alpha: float | None = None
    stored_paths: int | None = None
    runtime_s: float | None = None
    value: float | None = None
    oracle_value: float | None = None
    accuracy: float | None = None
    epsilon: float | None = None
    trace: list[str] | None = None
    error: str | None = None


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".10g")
    return str(x)


@dataclass
class BenchmarkReport:
    rows: list[BenchmarkRow]

    def summary(self) -> BenchmarkRow:
        ok = [r for r in self.rows if r.error is None]

        def mean(attr):
            vals = [getattr(r, attr) for r in ok if getattr(r, attr) is not None]
            return fmean(vals) if vals else None

        name = self.rows[0].network if self.rows else ""
        return BenchmarkRow(
            network=f"{name}:mean", seed=-1, s=-1, t=-1,
            hops=ok[0].hops if ok else None,
            alpha=mean("alpha"), stored_paths=mean("stored_paths"), runtime_s=mean("runtime_s"),
            value=mean("value"), oracle_value=mean("oracle_value"), accuracy=mean("accuracy"),
        )

    def to_csv(self, timing=True, summary=False) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        rows = self.rows + ([self.summary()] if summary else [])
        for r in rows:
            writer.writerow([
                r.network, _fmt(r.hops), _fmt(r.alpha), _fmt(r.stored_paths),
                _fmt(r.runtime_s) if timing else "",
                _fmt(r.value), _fmt(r.oracle_value), _fmt(r.accuracy),
            ])
        return buf.getvalue()

    def trace_csv(self) -> str:
        lines = ["seed,iter,new_records,cumulative_records"]
        for r in self.rows:
            for line in (r.trace or [])[1:]:
                lines.append(f"{r.seed},{line}")
        return "\n".join(lines) + "\n"


def _endpoint(value, grid: GridSpec | None, default):
    if value is None:
        return default
    if isinstance(value, tuple):
        return grid.vertex(*value)
    return int(value)


def _random_pair(graph: Graph, seed: int):
    rng = rng_for(seed + 0x5EED)
    for _ in range(10_000):
        s, t = (int(x) for x in rng.integers(0, graph.vertex_count, size=2))
        if s != t and hop_distances(graph, s)[t] > 0:
            return s, t
    raise RoutingError("could not draw a connected source/destination pair")


def build_instance(config: BenchmarkConfig, seed: int):
    kind, _, arg = config.source.partition(":")
    if kind == "grid":
        rows, cols = (int(x) for x in arg.lower().split("x"))
        spec = GridSpec(rows, cols, config.weight_low, config.weight_high, seed=seed)
        graph = generate_grid(spec)
        s = _endpoint(config.s, spec, 0)
        t = _endpoint(config.t, spec, graph.vertex_count - 1)
        return graph, s, t
    if kind == "tntp":
        graph = load_tntp(arg, seed=seed)
    elif kind == "instance":
        graph = load(arg)
    else:
        raise ValueError(f"unknown instance source {config.source!r}")
    if config.s is None or config.t is None:
        s, t = _random_pair(graph, seed)
    else:
        s, t = int(config.s), int(config.t)
    return graph, s, t


def run_one(config: BenchmarkConfig, seed: int) -> BenchmarkRow:
    graph, s, t = build_instance(config, seed)
    row = BenchmarkRow(network=graph.name, seed=seed, s=s, t=t)
    try:
        objective, deadline = parse_objective(config.objective, graph, s, t)
        if config.budget is not None:
            gamma = safe_hop_bound_for_budget(graph, s, t, config.budget)
        else:
            gamma = config.hops
        row.hops = gamma
        eps = config.epsilon
        if eps is None:
            if objective.lipschitz_beta is None:
                raise ValueError(f"objective {objective.name} declares no beta; pass epsilon instead of delta")
            eps = epsilon_for_target(config.delta, objective.lipschitz_beta, objective.criteria_count, gamma)
        row.epsilon = eps
        started = time.perf_counter()
        if config.budget is not None:
            result = solve_budget_constrained(graph, s, t, config.budget, objective, eps,
                                              memory_cap=config.memory_cap, gamma=gamma)
        else:
            result = solve_hop_constrained(graph, s, t, gamma, objective, eps, memory_cap=config.memory_cap)
        row.runtime_s = time.perf_counter() - started
        row.value = result.best_value
        row.stored_paths = result.stats.stored_records
        row.trace = result.stats.trace_lines()
        if deadline is not None and deadline.all_late:
            row.alpha = deadline_guarantee(eps, gamma, deadline.spec, result.best_value)
        else:
            row.alpha = result.guarantee_factor
        if config.oracle:
            cfg = EnumerationConfig(gamma, config.budget, config.oracle_max_walks)
            _, row.oracle_value = exact_optimum(graph, s, t, cfg, objective)
            if objective.maximize:
                row.accuracy = row.value / row.oracle_value if row.oracle_value > 0 else 1.0
            else:
                row.accuracy = row.oracle_value / row.value
    except (RoutingError, ValueError) as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def run_benchmark(config: BenchmarkConfig) -> BenchmarkReport:
    """Run every seed in order; a failing seed yields a row with ``error`` set."""
    return BenchmarkReport([run_one(config, seed) for seed in config.seeds])
