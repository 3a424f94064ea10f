"""Directed multigraphs with several additive positive weights per edge.

Walks are plain tuples of edge indices, so parallel edges stay distinguishable
and a loop traversed twice simply appears twice.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidGraph, InvalidWalk, ParseError

Walk = tuple  # tuple[int, ...] of edge indices


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    weights: tuple[float, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable directed multigraph.

    Each edge carries ``criteria_count`` criterion weights, followed by one
    budget weight when ``has_budget_weight`` is set. Self-loops and parallel
    edges are allowed. Construction does not validate; call :func:`validate`.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    criteria_count: int
    has_budget_weight: bool = False
    name: str = field(default="graph", compare=False)

    @classmethod
    def from_edges(cls, n, edges: Iterable[Sequence], d=None, has_budget=False, name="graph"):
        """Build from ``(tail, head, w1, ..., wd[, budget])`` rows or ``(tail, head, weights)``."""
        built = []
        for row in edges:
            if len(row) == 3 and isinstance(row[2], (list, tuple, np.ndarray)):
                tail, head, w = row
            else:
                tail, head, *w = row
            built.append(Edge(int(tail), int(head), tuple(float(x) for x in w)))
        if d is None:
            if not built:
                raise ValueError("cannot infer criteria_count from an empty edge list")
            d = len(built[0].weights) - (1 if has_budget else 0)
        return cls(int(n), tuple(built), int(d), bool(has_budget), name)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def width(self) -> int:
        return self.criteria_count + (1 if self.has_budget_weight else 0)

    @cached_property
    def tails(self) -> np.ndarray:
        a = np.array([e.tail for e in self.edges], dtype=np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def heads(self) -> np.ndarray:
        a = np.array([e.head for e in self.edges], dtype=np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        """All weight columns, shape ``(m, width)``."""
        w = np.array([e.weights for e in self.edges], dtype=np.float64).reshape(-1, self.width)
        w.setflags(write=False)
        return w

    @property
    def criteria(self) -> np.ndarray:
        return self.weight_matrix[:, : self.criteria_count]

    @property
    def budget(self) -> np.ndarray | None:
        if not self.has_budget_weight:
            return None
        return self.weight_matrix[:, self.criteria_count]

    @cached_property
    def out_edges(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.vertex_count)]
        for i, e in enumerate(self.edges):
            out[e.tail].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_edges(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in range(self.vertex_count)]
        for i, e in enumerate(self.edges):
            inc[e.head].append(i)
        return tuple(tuple(x) for x in inc)

    def with_weights(self, weights, has_budget=None, name=None) -> "Graph":
        """Same topology, new weight matrix."""
        weights = np.asarray(weights, dtype=np.float64)
        hb = self.has_budget_weight if has_budget is None else has_budget
        d = weights.shape[1] - (1 if hb else 0)
        edges = tuple(
            Edge(e.tail, e.head, tuple(float(x) for x in row)) for e, row in zip(self.edges, weights)
        )
        return Graph(self.vertex_count, edges, d, hb, name or self.name)


def validate(graph: Graph) -> ValidationReport:
    """Collect every violation of the graph invariants instead of stopping at the first.

    Criterion numbers in messages are 1-based; edge numbers are 0-based.
    """
    problems = []
    if graph.vertex_count < 1:
        problems.append("vertex count must be positive")
    if graph.criteria_count < 1:
        problems.append("criteria count must be positive")
    width = graph.width
    for i, e in enumerate(graph.edges):
        for end, v in (("tail", e.tail), ("head", e.head)):
            if not 0 <= v < graph.vertex_count:
                problems.append(f"vertex index out of range at edge {i} ({end}={v})")
        if len(e.weights) != width:
            problems.append(
                f"weight-vector length mismatch at edge {i}: expected {width}, got {len(e.weights)}"
            )
        for k, w in enumerate(e.weights):
            if not (w > 0 and np.isfinite(w)):
                problems.append(f"non-positive weight at edge {i}, criterion {k + 1}")
    return ValidationReport(tuple(problems))


def ensure_valid(graph: Graph) -> None:
    report = validate(graph)
    if not report.ok:
        raise InvalidGraph(report.violations)


def walk_vertices(graph: Graph, walk: Sequence[int]) -> list[int]:
    """Vertex sequence visited by ``walk``; raises InvalidWalk if edges are not incident."""
    if not walk:
        return []
    verts = [graph.edges[walk[0]].tail]
    for j, ei in enumerate(walk):
        e = graph.edges[ei]
        if e.tail != verts[-1]:
            raise InvalidWalk(f"edge {ei} at position {j} does not start at vertex {verts[-1]}")
        verts.append(e.head)
    return verts


def criteria_sum(walk: Sequence[int], graph: Graph, include_budget=False) -> np.ndarray:
    """Componentwise weight sum along ``walk``, repeated edges counted each time."""
    walk_vertices(graph, walk)
    cols = graph.width if include_budget else graph.criteria_count
    total = np.zeros(cols)
    w = graph.weight_matrix
    for ei in walk:
        total += w[ei, :cols]
    return total


def min_max_edge_weights(graph: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Per-criterion minimum and maximum edge weight (budget column excluded)."""
    if graph.edge_count == 0:
        raise ValueError("graph has no edges")
    c = graph.criteria
    return c.min(axis=0), c.max(axis=0)


# Instance text format:
#   n m d has_budget
#   tail head w1 ... wd [budget]      (m lines)
# '#' starts a comment. Floats are written with repr() so parsing is bit-exact.

def dumps(graph: Graph) -> str:
    lines = [
        f"# name: {graph.name}",
        f"{graph.vertex_count} {graph.edge_count} {graph.criteria_count} {int(graph.has_budget_weight)}",
    ]
    for e in graph.edges:
        lines.append(" ".join([str(e.tail), str(e.head), *(repr(float(w)) for w in e.weights)]))
    return "\n".join(lines) + "\n"


def loads(text: str, name=None) -> Graph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if name is None and raw.startswith("# name:"):
            name = raw[len("# name:"):].strip()
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 4:
                raise ParseError("header must be 'n m d has_budget'", lineno)
            try:
                n, m, d, hb = (int(p) for p in parts)
            except ValueError as exc:
                raise ParseError(f"bad header: {exc}", lineno) from None
            if hb not in (0, 1):
                raise ParseError("has_budget must be 0 or 1", lineno)
            header = (n, m, d, bool(hb))
            continue
        try:
            tail, head = int(parts[0]), int(parts[1])
            weights = tuple(float(p) for p in parts[2:])
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad edge record: {exc}", lineno) from None
        edges.append(Edge(tail, head, weights))
    if header is None:
        raise ParseError("missing header")
    n, m, d, hb = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges), d, hb, name or "graph")


def load(path, name=None) -> Graph:
    from pathlib import Path

    p = Path(path)
    text = p.read_text()
    if name is None and "# name:" not in text:
        name = p.stem
    return loads(text, name=name)


def dump(graph: Graph, path) -> None:
    from pathlib import Path

    Path(path).write_text(dumps(graph))
