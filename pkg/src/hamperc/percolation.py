"""Bernoulli bond percolation on H(d, n).

Samples are drawn without touching vacant edges: gaps between occupied edge
indices are geometric, so the cost of a sample is proportional to the number
of occupied edges.  Component structure comes from a union-find forest over
the occupied edges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels, seeding
from .graph import GraphParams, HyperplaneId, edge_directions, edge_endpoints

DEFAULT_MAX_VERTICES = 2**27


class ResourceLimitError(RuntimeError):
    """Requested instance exceeds a configured size guard."""


@dataclass(frozen=True)
class PercolationParam:
    """Edge retention level in one of three interchangeable coordinates.

    ``kind`` is ``"lambda"`` (expected occupied degree), ``"p"`` (retention
    probability) or ``"t"`` (window coordinate lambda - d log n).  The stored
    value is kept exactly; the other two are derived on access.
    """

    graph: GraphParams
    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in ("lambda", "p", "t"):
            raise ValueError(f"unknown parametrisation {self.kind!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"{self.kind} must be finite, got {self.value}")
        lam = self.lam
        if lam < 0 or lam > self.graph.degree:
            raise ValueError(
                f"lambda = {lam:.6g} outside [0, {self.graph.degree}] for H({self.graph.d},{self.graph.n}); "
                f"retention probability would leave [0, 1]")

    @classmethod
    def from_lambda(cls, graph: GraphParams, lam: float) -> PercolationParam:
        return cls(graph, "lambda", float(lam))

    @classmethod
    def from_p(cls, graph: GraphParams, p: float) -> PercolationParam:
        return cls(graph, "p", float(p))

    @classmethod
    def from_t(cls, graph: GraphParams, t: float) -> PercolationParam:
        return cls(graph, "t", float(t))

    @property
    def lam(self) -> float:
        if self.kind == "lambda":
            return self.value
        if self.kind == "p":
            return self.value * self.graph.degree
        return self.graph.d * math.log(self.graph.n) + self.value

    @property
    def p(self) -> float:
        if self.kind == "p":
            return self.value
        return self.lam / self.graph.degree

    @property
    def t(self) -> float:
        if self.kind == "t":
            return self.value
        return self.lam - self.graph.d * math.log(self.graph.n)

    @property
    def q(self) -> float:
        """1 - p, formed from lambda and m rather than by subtraction from p."""
        if self.kind == "p":
            return 1.0 - self.value
        m = self.graph.degree
        return (m - self.lam) / m


def _as_p(params: GraphParams, pp) -> float:
    if isinstance(pp, PercolationParam):
        if pp.graph != params:
            raise ValueError(f"parameter is for {pp.graph}, sample requested for {params}")
        return pp.p
    p = float(pp)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"retention probability {p} outside [0, 1]")
    return p


def _log_q(p: float) -> float:
    return math.log1p(-p)


def sample_occupied_edges(params: GraphParams, p: float, seed: int) -> np.ndarray:
    """Occupied edge indices, increasing, each kept independently with probability ``p``."""
    p = _as_p(params, p)
    total = params.num_edges
    if p == 0.0:
        return np.empty(0, np.int64)
    if p == 1.0:
        return np.arange(total, dtype=np.int64)
    rng = seeding.generator(seed, seeding.EDGES)
    mean = total * p
    capacity = int(min(total, mean + 6 * math.sqrt(mean) + 16))
    return _kernels.skip_sample(rng, total, _log_q(p), capacity)


@dataclass(frozen=True, eq=False)
class SampleGraph:
    """One realisation of H_lambda(d, n).

    ``edges`` are the occupied edge indices in increasing order and
    ``(u, w)`` their endpoints with ``u < w``.  The adjacency lists are built
    on first access to :attr:`adjacency`.
    """

    params: GraphParams
    p: float
    seed: int
    edges: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)
    degree: np.ndarray = field(repr=False)

    @property
    def num_occupied(self) -> int:
        return int(self.edges.size)

    @cached_property
    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR ``(indptr, indices)``; each list is ordered by edge index."""
        return _kernels.build_csr(self.u, self.w, self.degree)

    def occupied_neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self.adjacency
        return indices[indptr[v]:indptr[v + 1]]

    def directions(self) -> np.ndarray:
        """0-based direction of every occupied edge."""
        return edge_directions(self.edges, self.params)


def _check_size(params: GraphParams, max_vertices: int | None):
    limit = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    if params.num_vertices > limit:
        raise ResourceLimitError(
            f"H({params.d},{params.n}) has {params.num_vertices} vertices, above the guard of {limit}")


def _assemble(params: GraphParams, p: float, seed: int, edges: np.ndarray) -> SampleGraph:
    u, w = edge_endpoints(edges, params)
    nv = params.num_vertices
    degree = np.bincount(u, minlength=nv)
    degree += np.bincount(w, minlength=nv)
    return SampleGraph(params, p, seed, edges, u, w, degree)


def sample_from_edges(params: GraphParams, edges, p: float = math.nan, seed: int = -1) -> SampleGraph:
    """Wrap an explicit set of occupied edge indices as a sample (sorted, duplicates dropped)."""
    edges = np.unique(np.asarray(edges, dtype=np.int64))
    if edges.size and (edges[0] < 0 or edges[-1] >= params.num_edges):
        raise ValueError(f"edge indices must lie in [0, {params.num_edges})")
    return _assemble(params, p, seed, edges)


def build_sample(params: GraphParams, pp, seed: int, *, max_vertices: int | None = None) -> SampleGraph:
    """Draw a percolation sample; ``pp`` is a :class:`PercolationParam` or a probability."""
    p = _as_p(params, pp)
    _check_size(params, max_vertices)
    return _assemble(params, p, seed, sample_occupied_edges(params, p, seed))


def coupled_pair(params: GraphParams, p_low: float, p_high: float, seed: int,
                 *, max_vertices: int | None = None) -> tuple[SampleGraph, SampleGraph]:
    """Monotonely coupled samples at ``p_low <= p_high``.

    Every edge carries one uniform U_e; it is occupied at level p when
    U_e < p.  The dense sample is exactly ``build_sample(params, p_high,
    seed)``; conditional on U_e < p_high, U_e / p_high is uniform, so the
    sparse sample keeps each dense edge with probability p_low / p_high.
    """
    p_low = _as_p(params, p_low)
    p_high = _as_p(params, p_high)
    if p_low > p_high:
        raise ValueError(f"p_low = {p_low} exceeds p_high = {p_high}")
    high = build_sample(params, p_high, seed, max_vertices=max_vertices)
    if p_high == 0.0:
        keep = np.zeros(0, np.bool_)
    else:
        rng = seeding.generator(seed, seeding.COUPLING)
        keep = _kernels.thin(rng, high.num_occupied, p_low / p_high)
    low = _assemble(params, p_low, seed, high.edges[keep])
    return low, high


class DisjointSetForest:
    """Union-find over ``size`` elements with union by rank and path halving."""

    def __init__(self, size: int):
        self.parent = np.arange(size, dtype=np.int64)
        self.rank = np.zeros(size, dtype=np.int8)
        self.components = size

    def __len__(self):
        return self.parent.size

    def find(self, x: int) -> int:
        return int(_kernels.find(self.parent, x))

    def union(self, a: int, b: int) -> bool:
        merged = bool(_kernels.union(self.parent, self.rank, a, b))
        self.components -= merged
        return merged

    def union_many(self, a: np.ndarray, b: np.ndarray) -> int:
        merges = int(_kernels.union_edges(self.parent, self.rank, a, b))
        self.components -= merges
        return merges

    def labels(self) -> np.ndarray:
        """Root of every element."""
        return _kernels.root_labels(self.parent)

    def largest(self) -> tuple[int, int]:
        """``(size, root)`` of the largest set; ties go to the smallest root."""
        size, root = _kernels.largest_component(self.parent)
        return int(size), int(root)


@dataclass(frozen=True)
class ConnectivityReport:
    num_components: int
    size_of_largest: int
    Y: int
    is_connected: bool
    giant_plus_isolated: bool


def count_isolated(sample: SampleGraph) -> int:
    """Number of vertices with no occupied edge."""
    return int(np.count_nonzero(sample.degree == 0))


def components(sample: SampleGraph) -> DisjointSetForest:
    forest = DisjointSetForest(sample.params.num_vertices)
    forest.union_many(sample.u, sample.w)
    return forest


def connectivity_report(sample: SampleGraph) -> ConnectivityReport:
    forest = components(sample)
    size, _ = forest.largest()
    y = count_isolated(sample)
    k = forest.components
    # every non-isolated vertex lies in one component iff at most one
    # component has two or more vertices
    return ConnectivityReport(
        num_components=k,
        size_of_largest=size,
        Y=y,
        is_connected=k == 1,
        giant_plus_isolated=k - y <= 1,
    )


def hyperplane_connectivity(sample: SampleGraph, j: int) -> np.ndarray:
    """Connectivity of G^lambda_{j,k} for k = 1..n, as a boolean array indexed k - 1."""
    params = sample.params
    if not 1 <= j <= params.d:
        raise ValueError(f"direction {j!r} outside [1, {params.d}]")
    merges = _kernels.hyperplane_merges(
        sample.u, sample.w, sample.edges, params.edges_per_direction, j - 1,
        params.n ** (j - 1), params.n, params.num_vertices)
    return merges == params.n ** (params.d - 1) - 1


def hyperplane_connected(sample: SampleGraph, h: HyperplaneId) -> bool:
    """Whether the occupied edges inside hyperplane ``h`` connect its n^(d-1) vertices."""
    params = sample.params
    j, k = h
    if not 1 <= j <= params.d or not 1 <= k <= params.n:
        raise ValueError(f"hyperplane {h} outside H({params.d},{params.n})")
    merges = _kernels.single_hyperplane_merges(
        sample.u, sample.w, sample.edges, params.edges_per_direction, j - 1,
        params.n ** (j - 1), params.n, k - 1, params.num_vertices)
    return bool(merges == params.n ** (params.d - 1) - 1)


def small_instance_trials(params: GraphParams, p: float, reps: int, seed: int,
                          *, max_edges: int = 1 << 20) -> tuple[int, np.ndarray]:
    """Many independent samples of a small graph in one compiled loop.

    Uses the same skip sampler and union-find as :func:`build_sample` but a
    single PCG64 stream for all ``reps`` trials, which avoids per-sample
    Python overhead.  Returns the number of connected outcomes and the
    isolated-vertex count of every trial.
    """
    p = _as_p(params, p)
    if params.num_edges > max_edges:
        raise ResourceLimitError(f"H({params.d},{params.n}) has {params.num_edges} edges, above {max_edges}")
    eu, ew = edge_endpoints(np.arange(params.num_edges, dtype=np.int64), params)
    mode = 0 if p == 0.0 else 2 if p == 1.0 else 1
    rng = seeding.generator(seed, seeding.EDGES)
    log_q = _log_q(p) if mode == 1 else -1.0
    hits, ys = _kernels.connectivity_trials(rng, eu, ew, params.num_vertices, log_q, mode, int(reps))
    return int(hits), ys
