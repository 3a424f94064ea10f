import pytest

from nlroute import Graph, GridSpec, generate_grid, min_hop, random_graph, shortest_path_single_criterion
from nlroute.baselines import min_hop_path
from nlroute.errors import NoFeasiblePath
from nlroute.graph import criteria_sum, walk_vertices
from nlroute.oracle import EnumerationConfig, enumerate_walks


def test_single_edge():
    g = Graph.from_edges(2, [(0, 1, 3.0)])
    assert shortest_path_single_criterion(g, 0, 1, 0) == (3.0, (0,))


def test_parallel_edges():
    g = Graph.from_edges(2, [(0, 1, 3.0), (0, 1, 2.0)])
    assert shortest_path_single_criterion(g, 0, 1, 0) == (2.0, (1,))


def test_unreachable():
    g = Graph.from_edges(3, [(0, 1, 1.0)])
    with pytest.raises(NoFeasiblePath):
        shortest_path_single_criterion(g, 0, 2, 0)
    with pytest.raises(NoFeasiblePath):
        min_hop(g, 0, 2)


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("k", [0, 1])
def test_matches_enumeration(seed, k):
    n = 4 + seed % 4
    g = random_graph(n, 2 * n, seed=seed)
    value, witness = shortest_path_single_criterion(g, 0, n - 1, k)
    # A shortest walk is simple, so n-1 hops suffice for the oracle.
    brute = min(c[k] for _, c in enumerate_walks(g, 0, n - 1, EnumerationConfig(n - 1)))
    assert value == pytest.approx(brute, rel=1e-12)
    assert criteria_sum(witness, g)[k] == pytest.approx(value, rel=1e-12)
    for _, c in enumerate_walks(g, 0, n - 1, EnumerationConfig(n + 2)):
        assert value <= c[k] * (1 + 1e-12)


def test_min_hop_trivial():
    g = Graph.from_edges(2, [(0, 1, 1.0)])
    assert min_hop(g, 0, 0) == 0
    assert min_hop(g, 0, 1) == 1


def test_min_hop_grid_corner_to_corner():
    g = generate_grid(GridSpec(5, 5))
    assert min_hop(g, 0, 24) == 8


@pytest.mark.parametrize("seed", range(6))
def test_min_hop_witness_simple(seed):
    g = random_graph(6, 14, seed=seed)
    w = min_hop_path(g, 0, 5)
    verts = walk_vertices(g, w)
    assert len(w) == min_hop(g, 0, 5)
    assert len(set(verts)) == len(verts)
    assert verts[0] == 0 and verts[-1] == 5
