"""Bucketed sub-path tables for hop- and budget-constrained nonlinear routing.

Each vertex owns a sparse table keyed by lattice cell. Iteration ``i``
extends every record created in iteration ``i - 1`` along all of its
out-edges. In the hop-constrained variant a candidate is kept only if its
cell is still empty. In the budget variant it is kept if it respects the
budget and either fills an empty cell or beats the occupant's budget use.

Records live in flat numpy arrays; a record is identified by its row.
Row 0 is the root: the empty walk at ``s``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .baselines import min_hop, shortest_path_single_criterion
from .errors import NoFeasiblePath, ResourceExceeded
from .graph import Graph, ensure_valid, min_max_edge_weights
from .lattice import LatticeSpec, guarantee_factor
from .objectives import Objective

DEFAULT_MEMORY_CAP = 20_000_000


@dataclass(frozen=True)
class PathRecord:
    id: int
    vertex: int
    hops: int
    criteria: np.ndarray
    budget_value: float | None
    parent: int | None
    via_edge: int | None


@dataclass
class SolveStats:
    stored_records_per_iteration: list[int] = field(default_factory=list)
    new_records_per_iteration: list[int] = field(default_factory=list)
    extensions_attempted: int = 0
    wall_time: float = 0.0

    @property
    def stored_records(self) -> int:
        return self.stored_records_per_iteration[-1] if self.stored_records_per_iteration else 0

    def trace_lines(self) -> list[str]:
        lines = ["iter,new_records,cumulative_records"]
        for i, (new, cum) in enumerate(
            zip(self.new_records_per_iteration, self.stored_records_per_iteration), start=1
        ):
            lines.append(f"{i},{new},{cum}")
        return lines

    def write_trace(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(self.trace_lines()) + "\n")


class BucketTable:
    """Frozen result tables of one solve.

    ``occupants`` holds the record id sitting in each occupied
    ``(vertex, cell)`` slot at the end of the run; ``snapshots`` (optional)
    holds the same after every iteration.
    """

    def __init__(self, graph, lattice, vertex, hops, criteria, budget, parent, edge,
                 occ_keys, occ_rec, snapshots=None):
        self.graph = graph
        self.lattice = lattice
        self.vertex = vertex
        self.hops = hops
        self.criteria = criteria
        self.budget = budget
        self.parent = parent
        self.edge = edge
        self.occ_keys = occ_keys
        self.occupants = occ_rec
        self.snapshots = snapshots

    def __len__(self):
        return len(self.vertex)

    def record(self, rid: int) -> PathRecord:
        rid = int(rid)
        parent = int(self.parent[rid])
        edge = int(self.edge[rid])
        return PathRecord(
            id=rid,
            vertex=int(self.vertex[rid]),
            hops=int(self.hops[rid]),
            criteria=self.criteria[rid].copy(),
            budget_value=None if self.budget is None else float(self.budget[rid]),
            parent=None if parent < 0 else parent,
            via_edge=None if edge < 0 else edge,
        )

    def occupants_after(self, iteration: int | None = None) -> np.ndarray:
        """Record ids occupying the table after ``iteration`` (default: the end)."""
        if iteration is None:
            return self.occupants
        if self.snapshots is None:
            raise ValueError("solve was run without keep_snapshots=True")
        return self.snapshots[iteration - 1]

    def records_at(self, v: int, iteration: int | None = None) -> np.ndarray:
        occ = self.occupants_after(iteration)
        return occ[self.vertex[occ] == v]

    def walk(self, rid: int) -> tuple[int, ...]:
        return reconstruct_walk(self, rid)


def reconstruct_walk(table: BucketTable, rid: int) -> tuple[int, ...]:
    """Edge sequence from the root to record ``rid`` by following parent links."""
    walk = []
    rid = int(rid)
    for _ in range(len(table) + 1):
        if table.parent[rid] < 0:
            walk.reverse()
            return tuple(walk)
        walk.append(int(table.edge[rid]))
        rid = int(table.parent[rid])
    raise RuntimeError("cyclic parent chain in bucket table")


@dataclass
class SolveResult:
    best_walk: tuple[int, ...]
    best_value: float
    best_criteria: np.ndarray
    best_record: int
    stats: SolveStats
    guarantee_factor: float | None
    gamma: int
    lattice: LatticeSpec
    table: BucketTable
    budget_value: float | None = None


def hop_bound_for_budget(graph: Graph, s: int, t: int, b: float) -> int:
    """Hop bound ``ceil((b - l*)/w_min + hop_min)`` from the cheapest-budget s-t path.

    ``l*`` is the budget of the min-budget s-t path and ``hop_min`` the
    fewest edges of any s-t path. This bound can be smaller than the hop
    count of some budget-feasible walk (a cheap path with many edges);
    :func:`safe_hop_bound_for_budget` never is.
    """
    if not graph.has_budget_weight:
        raise ValueError("graph has no budget weight column")
    best, _ = shortest_path_single_criterion(graph, s, t, graph.criteria_count)
    if best > b:
        raise NoFeasiblePath(f"cheapest budget use {best!r} exceeds budget {b!r}")
    w_min = float(graph.budget.min())
    hmin = min_hop(graph, s, t)
    return max(1, math.ceil((b - best) / w_min + hmin))


def safe_hop_bound_for_budget(graph: Graph, s: int, t: int, b: float) -> int:
    """Largest edge count any budget-feasible s-t walk can have.

    A walk splits into a simple s-t path (at most ``n - 1`` edges, budget at
    least ``l*``) plus closed walks whose edges each cost at least ``w_min``.
    """
    if not graph.has_budget_weight:
        raise ValueError("graph has no budget weight column")
    best, _ = shortest_path_single_criterion(graph, s, t, graph.criteria_count)
    if best > b:
        raise NoFeasiblePath(f"cheapest budget use {best!r} exceeds budget {b!r}")
    w_min = float(graph.budget.min())
    bound = min((b - best) / w_min + graph.vertex_count - 1, b / w_min)
    return max(1, min_hop(graph, s, t), math.floor(bound + 1e-9))


def _out_csr(graph: Graph):
    order = np.argsort(graph.tails, kind="stable")
    ptr = np.zeros(graph.vertex_count + 1, dtype=np.int64)
    np.add.at(ptr, graph.tails + 1, 1)
    return np.cumsum(ptr), order


def _expand(front_ids, front_vertex, ptr, order):
    """Candidate (parent id, edge) pairs in vertex, record, edge order."""
    by_vertex = np.argsort(front_vertex, kind="stable")
    fid = front_ids[by_vertex]
    fv = front_vertex[by_vertex]
    deg = ptr[fv + 1] - ptr[fv]
    total = int(deg.sum())
    rep = np.repeat(np.arange(len(fid)), deg)
    starts = np.cumsum(deg) - deg
    offset = np.arange(total) - np.repeat(starts, deg)
    edges = order[ptr[fv][rep] + offset]
    return fid[rep], edges


def _run_tables(graph, s, gamma, epsilon, budget, memory_cap, keep_snapshots):
    ensure_valid(graph)
    if not 0 <= s < graph.vertex_count:
        raise ValueError(f"source {s} out of range")
    c_min, c_max = min_max_edge_weights(graph)
    lattice = LatticeSpec.build(c_min, c_max, gamma, epsilon)
    size = lattice.size
    if graph.vertex_count * size >= 2**62:
        raise ResourceExceeded(
            f"{graph.vertex_count} x {size} table slots are not addressable; use a larger epsilon",
            cap=2**62,
            required=graph.vertex_count * size,
        )

    d = graph.criteria_count
    crit_w = np.ascontiguousarray(graph.criteria)
    budget_w = graph.budget if budget is not None else None
    heads = graph.heads
    ptr, order = _out_csr(graph)

    # Chunks of record columns; row 0 is the root.
    vertex = [np.array([s], dtype=np.int64)]
    hops = [np.zeros(1, dtype=np.int32)]
    crit = [np.zeros((1, d))]
    bud = [np.zeros(1)]
    parent = [np.array([-1], dtype=np.int64)]
    edge = [np.array([-1], dtype=np.int64)]
    n_rows = 1

    occ_keys = np.empty(0, dtype=np.int64)
    occ_rec = np.empty(0, dtype=np.int64)
    snapshots = [] if keep_snapshots else None
    stats = SolveStats()

    front_ids = np.array([0], dtype=np.int64)
    front_vertex = vertex[0]
    front_crit = crit[0]
    front_bud = bud[0]

    for i in range(1, gamma + 1):
        if len(front_ids) == 0:
            new_ids = np.empty(0, dtype=np.int64)
            stats.new_records_per_iteration.append(0)
            stats.stored_records_per_iteration.append(len(occ_keys))
            if keep_snapshots:
                snapshots.append(occ_rec.copy())
            continue
        # Local positions of frontier rows so candidate parents index the front arrays.
        local = np.arange(len(front_ids))
        par_local, cand_edge = _expand(local, front_vertex, ptr, order)
        stats.extensions_attempted += len(cand_edge)
        cand_crit = front_crit[par_local] + crit_w[cand_edge]
        cand_v = heads[cand_edge]
        cand_bud = front_bud[par_local] + budget_w[cand_edge] if budget is not None else None

        gen = np.arange(len(cand_edge))
        if budget is not None:
            ok = cand_bud <= budget
            gen = gen[ok]
        if len(gen):
            keys = cand_v[gen] * size + lattice.flat(lattice.indices(cand_crit[gen]))
        else:
            keys = np.empty(0, dtype=np.int64)

        pos = np.searchsorted(occ_keys, keys)
        hit = pos < len(occ_keys)
        hit[hit] = occ_keys[pos[hit]] == keys[hit]

        if budget is None:
            free = ~hit
            keys_f, gen_f = keys[free], gen[free]
            uniq, first = np.unique(keys_f, return_index=True)
            chosen_gen = gen_f[first]  # aligned with sorted uniq
            replace_slots = np.empty(0, dtype=np.int64)
            replace_rank = np.empty(0, dtype=np.int64)
            insert_keys = uniq
            insert_gen = chosen_gen
        else:
            # Per cell, the lowest budget use wins; earliest generated breaks ties.
            o = np.lexsort((gen, cand_bud[gen], keys))
            k_sorted = keys[o]
            lead = np.ones(len(o), dtype=bool)
            lead[1:] = k_sorted[1:] != k_sorted[:-1]
            best = o[lead]
            b_keys, b_gen, b_hit, b_pos = keys[best], gen[best], hit[best], pos[best]
            b_val = cand_bud[b_gen]
            occ_val = np.where(b_hit, _budget_of(bud, occ_rec, b_pos, b_hit), np.inf)
            accept = b_val < occ_val
            replace_mask = accept & b_hit
            insert_mask = accept & ~b_hit
            replace_slots = b_pos[replace_mask]
            replace_rank = b_gen[replace_mask]
            insert_keys = b_keys[insert_mask]
            insert_gen = b_gen[insert_mask]

        all_gen = np.concatenate([insert_gen, replace_rank])
        n_new = len(all_gen)
        if n_rows + n_new > memory_cap:
            raise ResourceExceeded(
                f"iteration {i} needs {n_rows + n_new} stored records, cap is {memory_cap}; "
                "use a larger epsilon or raise the cap",
                cap=memory_cap,
                required=n_rows + n_new,
            )
        # New rows are numbered in generation order.
        by_gen = np.argsort(all_gen, kind="stable")
        rank = np.empty(n_new, dtype=np.int64)
        rank[by_gen] = np.arange(n_new)
        new_ids_for = n_rows + rank
        ins_ids = new_ids_for[: len(insert_gen)]
        rep_ids = new_ids_for[len(insert_gen):]

        ordered_gen = all_gen[by_gen]
        new_ids = n_rows + np.arange(n_new, dtype=np.int64)
        vertex.append(cand_v[ordered_gen])
        hops.append(np.full(n_new, i, dtype=np.int32))
        crit.append(cand_crit[ordered_gen])
        bud.append(cand_bud[ordered_gen] if budget is not None else np.zeros(n_new))
        parent.append(front_ids[par_local[ordered_gen]])
        edge.append(cand_edge[ordered_gen])
        n_rows += n_new

        if len(replace_slots):
            occ_rec = occ_rec.copy()
            occ_rec[replace_slots] = rep_ids
        if len(insert_keys):
            at = np.searchsorted(occ_keys, insert_keys)
            occ_keys = np.insert(occ_keys, at, insert_keys)
            occ_rec = np.insert(occ_rec, at, ins_ids)

        stats.new_records_per_iteration.append(n_new)
        stats.stored_records_per_iteration.append(len(occ_keys))
        if keep_snapshots:
            snapshots.append(occ_rec.copy())

        front_ids = new_ids
        front_vertex = vertex[-1]
        front_crit = crit[-1]
        front_bud = bud[-1]

    table = BucketTable(
        graph,
        lattice,
        np.concatenate(vertex),
        np.concatenate(hops),
        np.concatenate(crit),
        np.concatenate(bud) if budget is not None else None,
        np.concatenate(parent),
        np.concatenate(edge),
        occ_keys,
        occ_rec,
        snapshots,
    )
    return table, stats


def _budget_of(bud_chunks, occ_rec, pos, hit):
    """Budget use of the occupants addressed by ``pos`` (only where ``hit``)."""
    flat = np.concatenate(bud_chunks)
    out = np.full(len(pos), np.inf)
    out[hit] = flat[occ_rec[pos[hit]]]
    return out


def _best_at(table: BucketTable, t: int, objective: Objective):
    ids = table.records_at(t)
    if len(ids) == 0:
        raise NoFeasiblePath(f"no walk reaches vertex {t} within the constraint")
    crit = table.criteria[ids]
    values = objective.evaluate_many(crit)
    primary = -values if objective.maximize else values
    keys = [table.hops[ids]] + [crit[:, k] for k in range(crit.shape[1] - 1, -1, -1)] + [primary]
    j = np.lexsort(keys)[0]
    return int(ids[j]), float(values[j])


def _finish(table, stats, t, objective, gamma, epsilon, started):
    rid, value = _best_at(table, t, objective)
    stats.wall_time = time.perf_counter() - started
    beta = objective.lipschitz_beta
    factor = None if beta is None else guarantee_factor(epsilon, beta, objective.criteria_count, gamma)
    return SolveResult(
        best_walk=reconstruct_walk(table, rid),
        best_value=value,
        best_criteria=table.criteria[rid].copy(),
        best_record=rid,
        stats=stats,
        guarantee_factor=factor,
        gamma=gamma,
        lattice=table.lattice,
        table=table,
        budget_value=None if table.budget is None else float(table.budget[rid]),
    )


def _check_objective(graph, objective):
    if objective.criteria_count != graph.criteria_count:
        raise ValueError(
            f"objective expects {objective.criteria_count} criteria, graph has {graph.criteria_count}"
        )


def solve_hop_constrained(graph: Graph, s: int, t: int, gamma: int, objective: Objective,
                          epsilon: float, memory_cap: int = DEFAULT_MEMORY_CAP,
                          keep_snapshots: bool = False) -> SolveResult:
    """Best s-t walk of at most ``gamma`` edges up to bucketing error.

    With a log-log ``beta``-Lipschitz objective the returned value is within
    ``(1+epsilon)**(beta*d*gamma)`` of the optimum; that factor is reported as
    ``guarantee_factor`` when the objective declares ``beta``.
    """
    _check_objective(graph, objective)
    if gamma < 1:
        raise ValueError("gamma must be at least 1")
    started = time.perf_counter()
    table, stats = _run_tables(graph, s, gamma, epsilon, None, memory_cap, keep_snapshots)
    return _finish(table, stats, t, objective, gamma, epsilon, started)


def solve_budget_constrained(graph: Graph, s: int, t: int, b: float, objective: Objective,
                             epsilon: float, memory_cap: int = DEFAULT_MEMORY_CAP,
                             hop_rule: str = "safe", gamma: int | None = None,
                             keep_snapshots: bool = False) -> SolveResult:
    """Best s-t walk whose budget weight sums to at most ``b``.

    ``hop_rule`` picks the iteration count: ``"safe"`` uses
    :func:`safe_hop_bound_for_budget`, ``"min-hop"`` uses
    :func:`hop_bound_for_budget`. An explicit ``gamma`` overrides both.
    """
    _check_objective(graph, objective)
    if gamma is None:
        if hop_rule == "safe":
            gamma = safe_hop_bound_for_budget(graph, s, t, b)
        elif hop_rule == "min-hop":
            gamma = hop_bound_for_budget(graph, s, t, b)
        else:
            raise ValueError(f"unknown hop_rule {hop_rule!r}")
    if not graph.has_budget_weight:
        raise ValueError("graph has no budget weight column")
    started = time.perf_counter()
    table, stats = _run_tables(graph, s, gamma, epsilon, float(b), memory_cap, keep_snapshots)
    return _finish(table, stats, t, objective, gamma, epsilon, started)
