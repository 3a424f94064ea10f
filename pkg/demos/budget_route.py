"""
Routing under a budget
======================

A third weight column acts as a toll. Walks whose toll exceeds the budget
are discarded, and among records in the same bucket the cheaper toll wins.
"""
from nlroute import linear_objective, random_graph, shortest_path_single_criterion
from nlroute import hop_bound_for_budget, safe_hop_bound_for_budget, solve_budget_constrained

g = random_graph(8, 24, d=2, seed=11, budget=True)
s, t = 0, 7
cheapest, _ = shortest_path_single_criterion(g, s, t, 2)
b = 1.4 * cheapest

# two hop bounds: the textbook one, and one that always holds
print("hop bound", hop_bound_for_budget(g, s, t, b), "safe", safe_hop_bound_for_budget(g, s, t, b))

res = solve_budget_constrained(g, s, t, b, linear_objective(0, 2), epsilon=0.05)
print("walk", res.best_walk)
print("criterion 1", res.best_value, "toll", res.budget_value, "budget", b)
