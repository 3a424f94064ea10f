"""Brute-force walk enumeration, used as ground truth on small instances.

Shares nothing with the solver beyond the graph type: plain depth-first
search over edges, with pruning only where it provably cannot drop a
qualifying walk (not enough hops or budget left to reach ``t``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .baselines import hop_distances, shortest_path_distances
from .errors import EnumerationTooLarge, NoFeasiblePath
from .graph import Graph
from .objectives import Objective

DEFAULT_MAX_WALKS = 50_000_000


@dataclass(frozen=True)
class EnumerationConfig:
    max_hops: int
    budget: float | None = None
    max_walks: int = DEFAULT_MAX_WALKS

    def __post_init__(self):
        if self.max_hops < 1:
            raise ValueError("max_hops must be at least 1")


def enumerate_walks(graph: Graph, s: int, t: int | None, config: EnumerationConfig,
                    prune: bool = True) -> Iterator[tuple[tuple[int, ...], tuple[float, ...]]]:
    """Yield every nonempty s-t walk with at most ``max_hops`` edges, once each.

    With ``t=None`` walks ending anywhere are produced. Each item is
    ``(edges, criteria)``; criteria are summed left to right along the walk.
    """
    d = graph.criteria_count
    heads = graph.heads.tolist()
    weights = [tuple(row[:d]) for row in graph.weight_matrix.tolist()]
    out = graph.out_edges
    budget = config.budget
    bw = graph.budget.tolist() if budget is not None else None
    max_hops = config.max_hops

    hop_left = bud_left = None
    if prune and t is not None:
        hop_left = hop_distances(graph, t, reverse=True).tolist()
        if budget is not None:
            bud_left = shortest_path_distances(graph, t, d, reverse=True)[0].tolist()
    slack = 1e-9 * abs(budget) + 1e-12 if budget is not None else 0.0

    count = 0
    edges: list[int] = []
    verts = [s]
    crits = [(0.0,) * d]
    buds = [0.0]
    pos = [0]
    while pos:
        v = verts[-1]
        p = pos[-1]
        outs = out[v]
        if p >= len(outs) or len(edges) >= max_hops:
            pos.pop()
            verts.pop()
            crits.pop()
            buds.pop()
            if edges:
                edges.pop()
            continue
        pos[-1] = p + 1
        e = outs[p]
        u = heads[e]
        depth = len(edges) + 1
        nb = buds[-1] + bw[e] if budget is not None else 0.0
        if budget is not None and nb > budget:
            continue
        if hop_left is not None:
            h = hop_left[u]
            if h < 0 or depth + h > max_hops:
                continue
            if bud_left is not None and nb + bud_left[u] > budget + slack:
                continue
        nc = tuple(a + b for a, b in zip(crits[-1], weights[e]))
        edges.append(e)
        if t is None or u == t:
            count += 1
            if count > config.max_walks:
                raise EnumerationTooLarge(
                    f"more than {config.max_walks} walks within {max_hops} hops; "
                    "lower max_hops or raise max_walks"
                )
            yield tuple(edges), nc
        verts.append(u)
        crits.append(nc)
        buds.append(nb)
        pos.append(0)


def count_walks(graph, s, t, config, prune=True) -> int:
    return sum(1 for _ in enumerate_walks(graph, s, t, config, prune=prune))


def exact_optimum(graph: Graph, s: int, t: int, config: EnumerationConfig, objective: Objective,
                  chunk: int = 65536):
    """Best enumerated walk and its value.

    Ties go to the lexicographically smallest criteria vector, then to the
    walk with fewer edges, mirroring the solver's final scan.
    """
    best = None
    best_key = None

    def flush(walks, crits):
        nonlocal best, best_key
        vals = objective.evaluate_many(np.array(crits))
        for w, c, v in zip(walks, crits, vals.tolist()):
            key = (-v if objective.maximize else v, c, len(w))
            if best_key is None or key < best_key:
                best_key = key
                best = (w, v, c)

    walks, crits = [], []
    for w, c in enumerate_walks(graph, s, t, config):
        walks.append(w)
        crits.append(c)
        if len(walks) >= chunk:
            flush(walks, crits)
            walks, crits = [], []
    if walks:
        flush(walks, crits)
    if best is None:
        raise NoFeasiblePath(f"no walk from {s} to {t} within {config.max_hops} hops")
    return best[0], best[1]
