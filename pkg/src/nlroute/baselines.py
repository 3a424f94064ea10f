"""Exact single-criterion shortest paths and minimum hop counts."""
from __future__ import annotations

import heapq
from collections import deque

import numpy as np

from .errors import NoFeasiblePath
from .graph import Graph


def _trace_back(pred_edge, graph, s, t):
    walk = []
    v = t
    while v != s:
        e = pred_edge[v]
        walk.append(e)
        v = graph.edges[e].tail
    walk.reverse()
    return tuple(walk)


def shortest_path_distances(graph: Graph, s: int, column: int, reverse=False):
    """Dijkstra distances from ``s`` (to ``s`` if ``reverse``) on one weight column.

    Returns ``(dist, pred_edge)``; unreachable vertices have ``inf`` distance.
    """
    w = graph.weight_matrix[:, column]
    dist = np.full(graph.vertex_count, np.inf)
    pred = [-1] * graph.vertex_count
    dist[s] = 0.0
    heap = [(0.0, s)]
    adjacency = graph.in_edges if reverse else graph.out_edges
    done = np.zeros(graph.vertex_count, dtype=bool)
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for ei in adjacency[v]:
            e = graph.edges[ei]
            u = e.tail if reverse else e.head
            nd = d + w[ei]
            if nd < dist[u]:
                dist[u] = nd
                pred[u] = ei
                heapq.heappush(heap, (nd, u))
    return dist, pred


def shortest_path_single_criterion(graph: Graph, s: int, t: int, k: int):
    """Minimum of weight column ``k`` (0-based) over s-t paths, with a witness walk.

    Column ``criteria_count`` addresses the budget weight when present.
    """
    dist, pred = shortest_path_distances(graph, s, k)
    if not np.isfinite(dist[t]):
        raise NoFeasiblePath(f"vertex {t} is unreachable from {s}")
    return float(dist[t]), _trace_back(pred, graph, s, t)


def hop_distances(graph: Graph, s: int, reverse=False) -> np.ndarray:
    """BFS edge counts from ``s`` (to ``s`` if ``reverse``); -1 when unreachable."""
    hops = np.full(graph.vertex_count, -1, dtype=np.int64)
    hops[s] = 0
    queue = deque([s])
    adjacency = graph.in_edges if reverse else graph.out_edges
    while queue:
        v = queue.popleft()
        for ei in adjacency[v]:
            e = graph.edges[ei]
            u = e.tail if reverse else e.head
            if hops[u] < 0:
                hops[u] = hops[v] + 1
                queue.append(u)
    return hops


def min_hop_path(graph: Graph, s: int, t: int):
    pred = [-1] * graph.vertex_count
    seen = [False] * graph.vertex_count
    seen[s] = True
    queue = deque([s])
    while queue and not seen[t]:
        v = queue.popleft()
        for ei in graph.out_edges[v]:
            u = graph.edges[ei].head
            if not seen[u]:
                seen[u] = True
                pred[u] = ei
                queue.append(u)
    if not seen[t]:
        raise NoFeasiblePath(f"vertex {t} is unreachable from {s}")
    return _trace_back(pred, graph, s, t)


def min_hop(graph: Graph, s: int, t: int) -> int:
    return len(min_hop_path(graph, s, t))
