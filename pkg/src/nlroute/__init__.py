"""Approximate nonlinear-objective route planning on directed multigraphs.

Hop- and budget-constrained walks are found by keeping one representative
sub-path per log-scale bucket of criteria space, per vertex.
"""
from .baselines import min_hop, shortest_path_single_criterion
from .errors import (
    EnumerationTooLarge,
    InvalidGraph,
    InvalidWalk,
    NoFeasiblePath,
    ParseError,
    ResourceExceeded,
    RoutingError,
)
from .generators import GridSpec, generate_grid, generate_ratio_gadget, random_graph
from .graph import Edge, Graph, criteria_sum, min_max_edge_weights, validate
from .lattice import LatticeSpec, bucket_index, epsilon_for_target, lattice_size
from .objectives import (
    DeadlineSpec,
    Objective,
    deadline_guarantee,
    deadline_lipschitz_bound,
    deadline_objective,
    deadline_setup,
    eval_deadline,
    eval_ratio,
    linear_objective,
    make_generic_objective,
    parse_objective,
    ratio_objective,
    std_normal_cdf,
)
from .oracle import EnumerationConfig, enumerate_walks, exact_optimum
from .solver import (
    hop_bound_for_budget,
    reconstruct_walk,
    safe_hop_bound_for_budget,
    solve_budget_constrained,
    solve_hop_constrained,
)
from .tntp import parse_tntp

__version__ = "0.1.0"
