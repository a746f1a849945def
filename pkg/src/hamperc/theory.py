"""Closed-form predictions for H_lambda(d, n) and exact enumeration on tiny graphs.

Logarithms are natural throughout.  The enumeration routines tabulate every
edge subset of a small Hamming graph once (by subset size) and then evaluate
polynomials in p, so repeated queries at different p are cheap.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .graph import GraphParams, edge_endpoints
from .percolation import PercolationParam, ResourceLimitError

MAX_ENUMERATED_EDGES = 25


@dataclass(frozen=True)
class WindowPoint:
    """A point lambda = d log n + t of the critical window."""

    t: float
    graph: GraphParams

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"t = {self.t} gives negative lambda; need t >= -d log n")
        if self.p > 1:
            raise ValueError(f"t = {self.t} gives p = {self.p:.6g} > 1")

    @property
    def lam(self) -> float:
        return self.graph.d * math.log(self.graph.n) + self.t

    @property
    def p(self) -> float:
        return self.lam / self.graph.degree


@dataclass(frozen=True)
class MomentBounds:
    r: int
    lower: float
    upper: float


def predicted_connectivity(t: float) -> float:
    """Limiting connection probability exp(-exp(-t)) inside the window."""
    if -t > 709.0:
        return 0.0
    return math.exp(-math.exp(-t))


def hyperplane_window(t: float, d: int) -> float:
    """Window coordinate (d-1)t/d of a single hyperplane of H_lambda(d, n)."""
    if d < 2:
        raise ValueError("hyperplanes of H(1, n) are single vertices; need d >= 2")
    return (d - 1) * t / d


def alpha_parameter(t: float, d: int, eps: float) -> float:
    """Limiting fraction of connected hyperplanes per direction, reduced by ``eps``."""
    alpha = predicted_connectivity(hyperplane_window(t, d)) - eps
    if not alpha > 0:
        raise ValueError(f"alpha = {alpha:.6g} is not positive for t={t}, d={d}, eps={eps}")
    return alpha


def falling_factorial(x, r: int):
    """(x)_r = x (x-1) ... (x-r+1); exact for integer x, zero once a factor vanishes."""
    if r < 0:
        raise ValueError("order must be non-negative")
    if isinstance(x, (int, np.integer)):
        x = int(x)
        if 0 <= x < r:
            return 0
        return math.prod(range(x - r + 1, x + 1)) if r else 1
    out = 1.0
    for i in range(r):
        factor = x - i
        if factor == 0:
            return 0.0
        out *= factor
    return out


def factorial_moment_bounds(r: int, params: GraphParams, lam: float,
                            *, allow_loose: bool = False) -> MomentBounds:
    """Bounds on E[(Y)_r] for the isolated-vertex count Y.

    Every ordered r-tuple of distinct vertices is jointly isolated with
    probability (1 - lambda/m)^(rm - a), where a is the number of adjacent
    pairs in the tuple.  Taking a = 0 and a = r(r-1)/2 (all r on one line)
    gives the lower and upper bound.  The upper exponent is only attained
    when r <= n; larger r is refused unless ``allow_loose`` is set, in which
    case the (still valid, no longer attained) bound is returned.
    """
    if r < 1:
        raise ValueError(f"order r must be >= 1, got {r}")
    m = params.degree
    if not 0 <= lam <= m:
        raise ValueError(f"lambda = {lam} outside [0, {m}]")
    if r > params.num_vertices:
        return MomentBounds(r, 0.0, 0.0)
    if r > params.n and not allow_loose:
        raise ValueError(f"r = {r} exceeds n = {params.n}: r vertices cannot share one line")
    ff = float(falling_factorial(params.num_vertices, r))
    q = (m - lam) / m
    lower = ff * q ** (r * m)
    upper = ff * q ** (r * m - r * (r - 1) // 2)
    return MomentBounds(r, lower, upper)


def limiting_factorial_moment(t: float, r: int) -> float:
    """exp(-t r), the r-th factorial moment of Poisson(exp(-t))."""
    return math.exp(-t * r)


def expected_isolated(params: GraphParams, p: float) -> float:
    """Exact E[Y] = n^d (1-p)^m."""
    return params.num_vertices * (1.0 - p) ** params.degree


def poisson_pmf(k: int, mu: float) -> float:
    if k < 0 or mu < 0:
        raise ValueError("need k >= 0 and mu >= 0")
    if mu == 0:
        return 1.0 if k == 0 else 0.0
    return math.exp(-mu + k * math.log(mu) - math.lgamma(k + 1))


# -- exact enumeration -----------------------------------------------------------

def _check_enumerable(params: GraphParams):
    if params.num_edges > MAX_ENUMERATED_EDGES:
        raise ResourceLimitError(
            f"H({params.d},{params.n}) has {params.num_edges} edges; enumeration is capped at "
            f"{MAX_ENUMERATED_EDGES}")


@lru_cache(maxsize=32)
def subset_tables(params: GraphParams) -> tuple[np.ndarray, np.ndarray]:
    """Exact subset counts by size: connected[k] and isolated[k, y].  See _kernels.enumerate_subsets."""
    _check_enumerable(params)
    eu, ew = edge_endpoints(np.arange(params.num_edges, dtype=np.int64), params)
    connected, isolated = _kernels.enumerate_subsets(eu, ew, params.num_vertices)
    connected.setflags(write=False)
    isolated.setflags(write=False)
    return connected, isolated


def _subset_weights(params: GraphParams, p: float) -> list[float]:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p = {p} outside [0, 1]")
    total = params.num_edges
    return [p**k * (1.0 - p) ** (total - k) for k in range(total + 1)]


def brute_force_connectivity(params: GraphParams, p: float) -> float:
    """Exact P(connected) by summing over all 2^M edge subsets."""
    _check_enumerable(params)
    connected, _ = subset_tables(params)
    weights = _subset_weights(params, p)
    return math.fsum(int(c) * wk for c, wk in zip(connected, weights))


def brute_force_factorial_moment(params: GraphParams, p: float, r: int) -> float:
    """Exact E[(Y)_r] by summing over all 2^M edge subsets."""
    if r < 1:
        raise ValueError(f"order r must be >= 1, got {r}")
    _check_enumerable(params)
    _, isolated = subset_tables(params)
    weights = _subset_weights(params, p)
    ff = [falling_factorial(y, r) for y in range(isolated.shape[1])]
    return math.fsum(int(isolated[k, y]) * ff[y] * weights[k]
                     for k in range(isolated.shape[0]) for y in range(isolated.shape[1])
                     if isolated[k, y])


def joint_isolation_moment(params: GraphParams, p: float, r: int) -> float:
    """E[(Y)_r] as a sum of joint isolation probabilities over distinct r-tuples.

    A tuple with ``a`` adjacent pairs touches rm - a distinct edges, all of
    which must be vacant.  Sums over unordered sets and multiplies by r!.
    """
    if r < 1:
        raise ValueError(f"order r must be >= 1, got {r}")
    nv = params.num_vertices
    if r > nv:
        return 0.0
    if math.comb(nv, r) > 5_000_000:
        raise ResourceLimitError(f"C({nv},{r}) vertex sets is too many to enumerate")
    n, d, m = params.n, params.d, params.degree
    coords = [np.unravel_index(v, (n,) * d, order="F") for v in range(nv)]
    q = 1.0 - p

    def adjacent(a, b):
        return sum(x != y for x, y in zip(coords[a], coords[b])) == 1

    terms = []
    for combo in itertools.combinations(range(nv), r):
        pairs = sum(adjacent(a, b) for a, b in itertools.combinations(combo, 2))
        terms.append(q ** (r * m - pairs))
    return math.factorial(r) * math.fsum(terms)


def convert(pp: PercolationParam, to: str) -> PercolationParam:
    """Re-express ``pp`` in the ``"lambda"``, ``"p"`` or ``"t"`` coordinate."""
    value = {"lambda": pp.lam, "p": pp.p, "t": pp.t}.get(to)
    if value is None:
        raise ValueError(f"unknown parametrisation {to!r}")
    return PercolationParam(pp.graph, to, value)
