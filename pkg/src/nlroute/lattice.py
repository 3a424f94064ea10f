"""Log-scale bucketing of criteria space.

Coordinate ``k`` of a criteria vector ``l`` lands in bucket
``floor(log(l_k / c_min_k) / log(1 + eps))``. Everything sharing a bucket
agrees per coordinate to within a factor ``1 + eps``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceExceeded

# Added to the bucket quotient so exact powers of (1+eps) do not round one bucket low.
BOUNDARY_NUDGE = 1e-12
# Relative slack allowed below c_min before a vector is rejected.
LOWER_TOLERANCE = 1e-9
# Flat keys (vertex * size + index) must fit in int64.
MAX_KEYSPACE = 2**62


@dataclass(frozen=True)
class LatticeSpec:
    epsilon: float
    c_min: tuple[float, ...]
    gamma: int
    dims: tuple[int, ...]

    @classmethod
    def build(cls, c_min, c_max, gamma, epsilon) -> "LatticeSpec":
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if gamma < 1:
            raise ValueError("gamma must be at least 1")
        c_min = np.asarray(c_min, dtype=float)
        c_max = np.asarray(c_max, dtype=float)
        log_step = math.log1p(epsilon)
        dims = tuple(
            int(math.floor(math.log(gamma * hi / lo) / log_step + BOUNDARY_NUDGE)) + 1
            for lo, hi in zip(c_min, c_max)
        )
        return cls(float(epsilon), tuple(float(x) for x in c_min), int(gamma), dims)

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return lattice_size(self)

    def indices(self, criteria: np.ndarray) -> np.ndarray:
        """Vectorised :func:`bucket_index` for an ``(N, d)`` array."""
        criteria = np.atleast_2d(np.asarray(criteria, dtype=float))
        c_min = np.asarray(self.c_min)
        if np.any(criteria < c_min * (1 - LOWER_TOLERANCE)):
            raise ValueError("criteria below c_min: not the criteria of a nonempty walk")
        q = np.log(criteria / c_min) / math.log1p(self.epsilon) + BOUNDARY_NUDGE
        idx = np.floor(q).astype(np.int64)
        return np.clip(idx, 0, np.asarray(self.dims) - 1)

    def flat(self, indices: np.ndarray) -> np.ndarray:
        """Row-major flattening of ``(N, d)`` bucket coordinates."""
        return np.ravel_multi_index(tuple(np.asarray(indices).T), self.dims)


def bucket_index(criteria, spec: LatticeSpec) -> tuple[int, ...]:
    return tuple(int(x) for x in spec.indices(criteria)[0])


def lattice_size(spec: LatticeSpec) -> int:
    size = math.prod(spec.dims)
    if size >= MAX_KEYSPACE:
        raise ResourceExceeded(
            f"lattice has {size} cells, beyond the addressable {MAX_KEYSPACE}; use a larger epsilon",
            cap=MAX_KEYSPACE,
            required=size,
        )
    return size


def epsilon_for_target(delta, beta, d, gamma) -> float:
    """Bucket resolution whose worst-case factor ``(1+eps)**(beta*d*gamma)`` equals ``1+delta``."""
    if delta <= 0 or beta <= 0 or d < 1 or gamma < 1:
        raise ValueError("delta, beta, d and gamma must be positive")
    return math.expm1(math.log1p(delta) / (beta * d * gamma))


def guarantee_factor(epsilon, beta, d, gamma) -> float:
    exponent = beta * d * gamma * math.log1p(epsilon)
    return math.exp(exponent) if exponent < 700 else math.inf
