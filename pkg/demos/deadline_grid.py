"""
Probability of arriving on time on a grid
=========================================

Arc travel times are Gaussian with mean and variance as the two criteria.
With the deadline below every path's mean, the best route trades mean
against variance in a non-monotone way, and the mean-shortest path
is often not the best bet.
"""
from nlroute import GridSpec, deadline_guarantee, deadline_setup, generate_grid
from nlroute import shortest_path_single_criterion, solve_hop_constrained
from nlroute.oracle import EnumerationConfig, exact_optimum

spec = GridSpec(5, 5, 0.1, 5.0, seed=4)
g = generate_grid(spec)
s, t = spec.vertex(0, 0), spec.vertex(4, 4)

mean_best, fastest = shortest_path_single_criterion(g, s, t, 0)
setup = deadline_setup(g, s, t, 0.5 * mean_best)
print("deadline", setup.spec.D, "all late:", setup.all_late)

res = solve_hop_constrained(g, s, t, 12, setup.objective, epsilon=0.068)
print("on-time probability", res.best_value, "lattice size", res.lattice.size)
print("worst-case factor", deadline_guarantee(0.068, 12, setup.spec, res.best_value))

# with a tight deadline a higher-mean, lower-variance route does better
fastest_prob = setup.objective(g.criteria[list(fastest)].sum(axis=0))
print("probability along the mean-shortest path", fastest_prob)

_, exact = exact_optimum(g, s, t, EnumerationConfig(12), setup.objective)
print("exact optimum", exact, "ratio", res.best_value / exact)
