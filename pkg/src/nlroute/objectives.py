"""Low-rank path objectives evaluated on criteria vectors.

An objective maps the ``d`` criterion sums of a walk to a positive number.
The solvers only ever call :meth:`Objective.evaluate_many`, so anything that
accepts an ``(N, d)`` array works.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special

MINIMIZE = "minimize"
MAXIMIZE = "maximize"

# Bound on phi(x)/Phi(x) over [-3, 0), and the coefficient quoted for the Phi(-2) regime.
MILLS_BOUND_3 = 3.284
COEFF_REGIME_2 = 4.745
# Approximation-ratio caps for returned values above Phi(-3) and Phi(-2).
CAP_REGIME_3 = 384.62
CAP_REGIME_2 = 21.93


@dataclass(frozen=True)
class Objective:
    name: str
    criteria_count: int
    sense: str
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    lipschitz_beta: float | None = None

    def __post_init__(self):
        if self.sense not in (MINIMIZE, MAXIMIZE):
            raise ValueError(f"sense must be {MINIMIZE!r} or {MAXIMIZE!r}, got {self.sense!r}")

    @property
    def maximize(self) -> bool:
        return self.sense == MAXIMIZE

    def evaluate_many(self, criteria) -> np.ndarray:
        criteria = np.atleast_2d(np.asarray(criteria, dtype=float))
        return np.asarray(self.func(criteria), dtype=float).reshape(len(criteria))

    def __call__(self, criteria) -> float:
        return float(self.evaluate_many(criteria)[0])

    def better(self, a, b) -> bool:
        """True if value ``a`` is strictly preferable to ``b``."""
        return a > b if self.maximize else a < b


def std_normal_cdf(x):
    """Standard normal CDF through the complementary error function."""
    x = np.asarray(x, dtype=float)
    out = 0.5 * special.erfc(-x / math.sqrt(2.0))
    return float(out) if out.ndim == 0 else out


def std_normal_pdf(x):
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- ratio

def eval_ratio(criteria) -> float:
    l1, l2 = criteria
    return float(l1) / float(l2)


def ratio_objective() -> Objective:
    return Objective("ratio", 2, MINIMIZE, lambda c: c[:, 0] / c[:, 1])


def linear_objective(k: int, d: int) -> Objective:
    """Minimise the ``k``-th criterion (0-based); exactly 1-Lipschitz on log-log scale."""
    if not 0 <= k < d:
        raise ValueError(f"criterion index {k} out of range for d={d}")
    return Objective(f"linear:k={k + 1}", d, MINIMIZE, lambda c: c[:, k], lipschitz_beta=1.0)


# ------------------------------------------------------------- deadline

@dataclass(frozen=True)
class DeadlineSpec:
    """Deadline ``D`` and a lower bound ``S`` on the variance of every s-t walk."""

    D: float
    S: float
    regime_threshold: int = 3

    def __post_init__(self):
        if not (self.D > 0 and self.S > 0):
            raise ValueError("deadline D and variance bound S must be positive")
        if self.regime_threshold not in (2, 3):
            raise ValueError("regime_threshold must be 2 or 3")

    @property
    def slack(self) -> float:
        return self.D / math.sqrt(self.S)


def eval_deadline(criteria, spec: DeadlineSpec) -> float:
    mean, var = criteria
    return std_normal_cdf((spec.D - mean) / math.sqrt(var))


def deadline_lipschitz_bound(spec: DeadlineSpec) -> float:
    """Log-log Lipschitz constant of the on-time probability on the all-late region.

    For regime 3 this is ``3.284 * (3 + D/sqrt(S))``. The regime-2 value is
    scaled so that ``beta * d`` reproduces the ``4.745 * (2 + D/sqrt(S))``
    exponent (``d = 2``).
    """
    if spec.regime_threshold == 3:
        return MILLS_BOUND_3 * (3.0 + spec.slack)
    return COEFF_REGIME_2 * (2.0 + spec.slack) / 2.0


def deadline_objective(spec: DeadlineSpec, with_beta=True) -> Objective:
    D = spec.D

    def prob(c):
        return std_normal_cdf((D - c[:, 0]) / np.sqrt(c[:, 1]))

    beta = deadline_lipschitz_bound(spec) if with_beta else None
    return Objective(f"deadline:D={D!r}", 2, MAXIMIZE, prob, lipschitz_beta=beta)


def deadline_guarantee(epsilon, gamma, spec: DeadlineSpec, returned_value):
    """Worst-case ratio for a returned on-time probability, or None when no bound applies.

    Both caps are checked and the tighter applicable one is reported.
    """
    if not 0.0 < returned_value < 0.5:
        return None
    log_step = math.log1p(epsilon)
    candidates = []
    if returned_value > std_normal_cdf(-3.0):
        e = 2 * MILLS_BOUND_3 * (3.0 + spec.slack) * gamma * log_step
        candidates.append(min(CAP_REGIME_3, math.exp(min(e, 700.0))))
    if returned_value > std_normal_cdf(-2.0):
        e = COEFF_REGIME_2 * (2.0 + spec.slack) * gamma * log_step
        candidates.append(min(CAP_REGIME_2, math.exp(min(e, 700.0))))
    return min(candidates) if candidates else None


@dataclass(frozen=True)
class DeadlineSetup:
    objective: Objective
    spec: DeadlineSpec
    min_mean: float
    all_late: bool


def deadline_setup(graph, s, t, D, regime=3) -> DeadlineSetup:
    """Deadline objective for a concrete instance.

    ``S`` is the variance of the minimum-variance s-t path. When some path
    has mean at most ``D`` the instance is in the monotone regime and the
    objective is returned without a Lipschitz constant.
    """
    from .baselines import shortest_path_single_criterion

    S, _ = shortest_path_single_criterion(graph, s, t, 1)
    min_mean, _ = shortest_path_single_criterion(graph, s, t, 0)
    spec = DeadlineSpec(float(D), float(S), regime)
    all_late = min_mean > D
    return DeadlineSetup(deadline_objective(spec, with_beta=all_late), spec, float(min_mean), all_late)


# -------------------------------------------------------------- generic

def make_generic_objective(d, sense, formula, beta=None, vectorized=False, name="generic") -> Objective:
    """Wrap a user formula ``g(l_1, ..., l_d)``.

    With ``vectorized=False`` the formula receives one criteria vector at a
    time; otherwise it receives the whole ``(N, d)`` batch.
    """
    if vectorized:
        func = formula
    else:
        def func(c):
            return np.fromiter((formula(row) for row in c), dtype=float, count=len(c))
    return Objective(name, int(d), sense, func, lipschitz_beta=beta)


def parse_objective(text: str, graph=None, s=None, t=None):
    """Build an objective from ``ratio``, ``linear:k=<i>`` or ``deadline:D=<x>[,regime=2|3]``.

    ``linear`` indices are 1-based. ``deadline`` also accepts ``Dfrac=<x>``,
    meaning ``D = x * (mean of the minimum-mean s-t path)``. Returns
    ``(objective, deadline_setup_or_None)``.
    """
    head, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise ValueError(f"malformed objective parameter {item!r}")
        params[key.strip()] = value.strip()
    head = head.strip()
    if head == "ratio":
        return ratio_objective(), None
    if head == "linear":
        d = graph.criteria_count if graph is not None else int(params.get("d", 1))
        return linear_objective(int(params.get("k", 1)) - 1, d), None
    if head == "deadline":
        if graph is None or s is None or t is None:
            raise ValueError("deadline objective needs the instance to compute S")
        regime = int(params.get("regime", 3))
        if "D" in params:
            D = float(params["D"])
        elif "Dfrac" in params:
            from .baselines import shortest_path_single_criterion

            D = float(params["Dfrac"]) * shortest_path_single_criterion(graph, s, t, 0)[0]
        else:
            raise ValueError("deadline objective needs D=<value> or Dfrac=<value>")
        setup = deadline_setup(graph, s, t, D, regime)
        return setup.objective, setup
    raise ValueError(f"unknown objective {text!r}")
