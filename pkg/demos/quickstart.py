"""
Approximate routing on a small graph
====================================

Build a four-vertex multigraph with two criteria per arc, minimise the
cost-to-time ratio over walks of at most six hops, and compare against
brute-force enumeration.
"""
import numpy as np

from nlroute import Graph, ratio_objective, solve_hop_constrained, validate
from nlroute.oracle import EnumerationConfig, exact_optimum

# each row: tail, head, cost, time
g = Graph.from_edges(4, [
    (0, 1, 4.0, 1.0),
    (0, 2, 1.0, 1.0),
    (1, 3, 1.0, 2.0),
    (2, 3, 5.0, 1.0),
    (1, 1, 0.5, 3.0),   # a cheap, slow self-loop
], name="toy")
print(validate(g))

res = solve_hop_constrained(g, 0, 3, gamma=6, objective=ratio_objective(), epsilon=0.05)
print("walk", res.best_walk, "ratio", res.best_value, "criteria", res.best_criteria)
print("records stored", res.stats.stored_records)

# the loop pays off: the best walk goes round it to dilute the cost
walk, exact = exact_optimum(g, 0, 3, EnumerationConfig(6), ratio_objective())
print("exact", walk, exact, "gap", res.best_value / exact)

# per-iteration growth of the record table
print(np.array(res.stats.stored_records_per_iteration))
