"""
How the record table grows
==========================

On a 10x10 grid the number of stored records climbs quickly for the first
few hops, then flattens once most lattice buckets at most vertices are taken.
Smaller epsilon gives a finer lattice and many more records.
"""
import numpy as np

from nlroute import GridSpec, deadline_setup, generate_grid
from nlroute import shortest_path_single_criterion, solve_hop_constrained

spec = GridSpec(10, 10, 0.1, 5.0, seed=0)
g = generate_grid(spec)
s, t = spec.vertex(1, 1), spec.vertex(8, 8)
setup = deadline_setup(g, s, t, 0.9 * shortest_path_single_criterion(g, s, t, 0)[0])

for eps in (0.1, 0.02):
    res = solve_hop_constrained(g, s, t, 15, setup.objective, eps)
    cum = np.array(res.stats.stored_records_per_iteration)
    print(f"eps={eps}: {cum[-1]} records in {res.stats.wall_time:.2f}s")
    print("  growth per hop", np.round(cum[1:] / cum[:-1], 2))

# the same numbers as CSV: iter,new_records,cumulative_records
print("\n".join(res.stats.trace_lines()[:5]))
