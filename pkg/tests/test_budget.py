import math

import numpy as np
import pytest

from nlroute import (
    Graph,
    hop_bound_for_budget,
    linear_objective,
    random_graph,
    ratio_objective,
    safe_hop_bound_for_budget,
    shortest_path_single_criterion,
    solve_budget_constrained,
)
from nlroute.errors import NoFeasiblePath
from nlroute.graph import criteria_sum
from nlroute.oracle import EnumerationConfig, enumerate_walks, exact_optimum


def test_single_edge_tight_budget():
    g = Graph.from_edges(2, [(0, 1, 1.0, 1.0, 2.0)], has_budget=True)
    res = solve_budget_constrained(g, 0, 1, 2.0, ratio_objective(), 0.1)
    assert res.best_walk == (0,) and res.budget_value == 2.0


def test_budget_excludes_better_ratio():
    g = Graph.from_edges(2, [(0, 1, 10.0, 5.0, 1.0), (0, 1, 4.0, 8.0, 3.0)], has_budget=True)
    res = solve_budget_constrained(g, 0, 1, 2.0, ratio_objective(), 0.1)
    assert res.best_walk == (0,) and res.best_value == 2.0


def test_infeasible_budget():
    g = Graph.from_edges(2, [(0, 1, 1.0, 1.0, 3.0)], has_budget=True)
    with pytest.raises(NoFeasiblePath):
        solve_budget_constrained(g, 0, 1, 2.0, ratio_objective(), 0.1)


def test_requires_budget_column(single_edge):
    with pytest.raises(ValueError):
        solve_budget_constrained(single_edge, 0, 1, 2.0, ratio_objective(), 0.1)


def _hop_bound_graph():
    # min-budget path 0->1->2 costs 1 + 2 = 3 over 2 hops; edge 0->2 has budget 4
    return Graph.from_edges(
        3, [(0, 1, 1.0, 1.0, 1.0), (1, 2, 1.0, 1.0, 2.0), (0, 2, 1.0, 1.0, 4.0)], has_budget=True
    )


def test_hop_bound_example():
    g = _hop_bound_graph()
    # hop_min is 1 here (edge 0->2); ceil((5 - 3)/1 + 1) = 3
    assert hop_bound_for_budget(g, 0, 2, 5.0) == 3
    g2 = Graph.from_edges(3, [(0, 1, 1.0, 1.0, 1.0), (1, 2, 1.0, 1.0, 2.0), (1, 1, 1.0, 1.0, 1.0)], has_budget=True)
    assert hop_bound_for_budget(g2, 0, 2, 5.0) == math.ceil((5 - 3) / 1 + 2) == 4


def test_hop_bound_zero_slack():
    g = Graph.from_edges(3, [(0, 1, 1.0, 1.0, 1.0), (1, 2, 1.0, 1.0, 2.0)], has_budget=True)
    assert hop_bound_for_budget(g, 0, 2, 3.0) == 2


def test_hop_bound_counterexample():
    # cheapest-budget route has 5 edges, fewest-hop route has 1 edge
    arcs = [(v, v + 1, 1.0, 1.0, 1.0) for v in range(5)] + [(0, 5, 1.0, 1.0, 10.0)]
    g = Graph.from_edges(6, arcs, has_budget=True)
    feasible = [w for w, _ in enumerate_walks(g, 0, 5, EnumerationConfig(8, budget=5.0))]
    assert max(map(len, feasible)) == 5
    assert hop_bound_for_budget(g, 0, 5, 5.0) == 1
    assert safe_hop_bound_for_budget(g, 0, 5, 5.0) >= 5
    res = solve_budget_constrained(g, 0, 5, 5.0, linear_objective(0, 2), 0.1)
    assert len(res.best_walk) == 5
    with pytest.raises(NoFeasiblePath):
        solve_budget_constrained(g, 0, 5, 5.0, linear_objective(0, 2), 0.1, hop_rule="min-hop")


@pytest.mark.parametrize("seed", range(12))
def test_safe_bound_never_exceeded(seed):
    g = random_graph(5, 11, seed=seed, budget=True)
    best, _ = shortest_path_single_criterion(g, 0, 4, 2)
    b = 1.5 * best
    gamma = safe_hop_bound_for_budget(g, 0, 4, b)
    walks = enumerate_walks(g, 0, 4, EnumerationConfig(gamma + 2, budget=b))
    assert max(len(w) for w, _ in walks) <= gamma


@pytest.mark.parametrize("seed", range(10))
def test_budget_variant_invariants(seed):
    g = random_graph(5, 12, seed=seed, budget=True)
    best, _ = shortest_path_single_criterion(g, 0, 4, 2)
    b = 1.5 * best
    eps = 0.25
    res = solve_budget_constrained(g, 0, 4, b, linear_objective(0, 2), eps, keep_snapshots=True)
    tab = res.table
    assert (tab.budget <= b).all()
    assert res.budget_value <= b
    full = criteria_sum(res.best_walk, g, include_budget=True)
    assert full[2] == pytest.approx(res.budget_value, rel=1e-12)

    # replacement strictly lowers the budget use held in a slot
    prev = {}
    for snap in tab.snapshots:
        cur = {}
        for rid in snap.tolist():
            cell = (int(tab.vertex[rid]), tuple(res.lattice.indices(tab.criteria[rid])[0]))
            cur[cell] = rid
            if cell in prev and prev[cell] != rid:
                assert tab.budget[rid] < tab.budget[prev[cell]]
        prev = cur

    # coverage with budget dominance
    gamma = res.gamma
    for walk, c in enumerate_walks(g, 0, None, EnumerationConfig(gamma, budget=b)):
        v = g.edges[walk[-1]].head
        used = float(np.sum(g.budget[list(walk)]))
        for i in range(len(walk), gamma + 1):
            ids = tab.records_at(v, i)
            gaps = np.abs(np.log(tab.criteria[ids]) - np.log(c)).max(axis=1)
            ok = (gaps <= i * math.log1p(eps) + 1e-9) & (tab.budget[ids] <= used * (1 + 1e-12))
            assert ok.any()

    _, opt = exact_optimum(g, 0, 4, EnumerationConfig(gamma, budget=b), linear_objective(0, 2))
    assert opt <= res.best_value <= res.guarantee_factor * opt
