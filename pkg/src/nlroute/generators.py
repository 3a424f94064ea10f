"""Synthetic instances: bidirected grids, ratio hardness gadgets, random multigraphs.

All randomness goes through ``numpy.random.Generator(PCG64(seed))`` so a
seed reproduces the same instance on every platform.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Edge, Graph


def rng_for(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


@dataclass(frozen=True)
class GridSpec:
    rows: int
    cols: int
    weight_low: float | tuple[float, ...] = 0.1
    weight_high: float | tuple[float, ...] = 5.0
    seed: int = 0
    bidirectional: bool = True
    criteria_count: int = 2

    def __post_init__(self):
        lo = np.broadcast_to(np.asarray(self.weight_low, dtype=float), (self.criteria_count,))
        hi = np.broadcast_to(np.asarray(self.weight_high, dtype=float), (self.criteria_count,))
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid needs at least one row and one column")
        if np.any(lo <= 0) or np.any(lo >= hi):
            raise ValueError("weight range must satisfy 0 < low < high")

    def vertex(self, r, c) -> int:
        return r * self.cols + c


def generate_grid(spec: GridSpec) -> Graph:
    """``rows x cols`` lattice; vertex ``(r, c)`` has index ``r * cols + c``.

    Every neighbouring pair gets an arc each way (one arc, low to high index,
    when ``bidirectional`` is off). Arc weights are i.i.d. uniform per criterion.
    """
    pairs = []
    for r in range(spec.rows):
        for c in range(spec.cols):
            v = spec.vertex(r, c)
            if c + 1 < spec.cols:
                pairs.append((v, v + 1))
            if r + 1 < spec.rows:
                pairs.append((v, v + spec.cols))
    arcs = []
    for a, b in pairs:
        arcs.append((a, b))
        if spec.bidirectional:
            arcs.append((b, a))
    d = spec.criteria_count
    lo = np.broadcast_to(np.asarray(spec.weight_low, dtype=float), (d,))
    hi = np.broadcast_to(np.asarray(spec.weight_high, dtype=float), (d,))
    w = rng_for(spec.seed).uniform(lo, hi, size=(len(arcs), d))
    edges = tuple(Edge(a, b, tuple(row)) for (a, b), row in zip(arcs, w.tolist()))
    return Graph(spec.rows * spec.cols, edges, d, False, f"grid{spec.rows}x{spec.cols}")


def generate_ratio_gadget(base: Graph, s: int, lam: float) -> Graph:
    """Reweight ``base`` so the min cost-to-time ratio path is the longest path.

    Edges touching ``s`` get ``(lam * n + 1, 1)``, all others ``(1, 1)``.
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")
    heavy = lam * base.vertex_count + 1.0
    edges = tuple(
        Edge(e.tail, e.head, (heavy, 1.0) if s in (e.tail, e.head) else (1.0, 1.0))
        for e in base.edges
    )
    return Graph(base.vertex_count, edges, 2, False, f"gadget-{base.name}")


def random_graph(n, m, d=2, seed=0, budget=False, low=0.5, high=5.0, spine=True,
                 self_loops=True) -> Graph:
    """Random multigraph with ``m`` arcs.

    With ``spine`` the first ``n - 1`` arcs form the path 0 -> 1 -> ... -> n-1,
    so vertex ``n - 1`` is reachable from 0.
    """
    rng = rng_for(seed)
    arcs = []
    if spine:
        arcs.extend((v, v + 1) for v in range(n - 1))
    while len(arcs) < m:
        a, b = (int(x) for x in rng.integers(0, n, size=2))
        if a == b and not self_loops:
            continue
        arcs.append((a, b))
    width = d + (1 if budget else 0)
    w = rng.uniform(low, high, size=(len(arcs), width))
    edges = tuple(Edge(a, b, tuple(row)) for (a, b), row in zip(arcs, w.tolist()))
    return Graph(n, edges, d, budget, f"random-n{n}-m{m}-s{seed}")
