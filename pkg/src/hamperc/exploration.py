"""Hyperplane events and the two-vertex exploration process on H_lambda(d, n).

For a direction j the levels split into L = {1..floor(n/2)} and
R = {floor(n/2)+1..n}.  This splits the edges into three classes: both
endpoints at L-levels (LL), both at R-levels (RR), and straddling (LR).  An
exploration started from an occupied edge inside V_L(j) alternates between
probing LR edges towards internally connected R-hyperplanes and growing
through LL edges, two vertices per cycle.

:func:`explore_from_edge` follows the procedure literally, probing every
candidate edge individually and optionally logging which edges it looked at.
:func:`explore_edges` runs the same procedure compiled, over many starting
edges of one sample, reading the occupied adjacency lists instead.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, seeding
from .graph import (GraphParams, decode_vertex, edge_decompose, edge_from_index, index_from_edge,
                    vertex_levels)
from .percolation import SampleGraph, build_sample, hyperplane_connectivity


class EdgeClass(enum.Enum):
    LL = "LL"
    RR = "RR"
    LR = "LR"


class Reason(enum.Enum):
    FOUND_HYPERPLANE = "found_hyperplane"
    STARVED = "starved"
    CYCLE_LIMIT = "cycle_limit"


@dataclass(frozen=True)
class LRPartition:
    j: int
    L: tuple[int, ...]
    R: tuple[int, ...]


@dataclass(frozen=True)
class ExplorationOutcome:
    """Where an exploration stopped.

    ``cycle`` is the cycle during which it stopped.  ``T`` is that cycle for
    a starved run and infinity when a connected hyperplane was reached.
    """

    cycle: int
    reason: Reason
    searched_count: int

    @property
    def T(self) -> float:
        return math.inf if self.reason is Reason.FOUND_HYPERPLANE else self.cycle


def partition_levels(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    half = n // 2
    return tuple(range(1, half + 1)), tuple(range(half + 1, n + 1))


def lr_partition(j: int, n: int) -> LRPartition:
    return LRPartition(j, *partition_levels(n))


def classify_edge(e: int, j: int, params: GraphParams) -> EdgeClass:
    """Class of edge ``e`` relative to the L/R split of direction ``j``."""
    if not 1 <= j <= params.d:
        raise ValueError(f"direction {j!r} outside [1, {params.d}]")
    direction, _, a, b = edge_decompose(e, params)
    half = params.n // 2
    if direction == j:
        la, lb = a, b
    else:
        la = lb = decode_vertex(edge_from_index(e, params)[0], params)[j - 1]
    if la <= half and lb <= half:
        return EdgeClass.LL
    if la > half and lb > half:
        return EdgeClass.RR
    return EdgeClass.LR


def classify_edges(u: np.ndarray, w: np.ndarray, j: int, params: GraphParams) -> np.ndarray:
    """Vectorised classification of endpoint arrays: 0 = LL, 1 = RR, 2 = LR."""
    half = params.n // 2
    left_u = vertex_levels(u, j, params) < half
    left_w = vertex_levels(w, j, params) < half
    out = np.full(left_u.shape, 2, dtype=np.int8)
    out[left_u & left_w] = 0
    out[~left_u & ~left_w] = 1
    return out


def side_counts(connected: np.ndarray) -> tuple[int, int]:
    """Connected-hyperplane counts among L-levels and among R-levels."""
    half = connected.size // 2
    return int(connected[:half].sum()), int(connected[half:].sum())


def event_B(sample: SampleGraph, j: int, side: str, alpha: float,
            connected: np.ndarray | None = None) -> bool:
    """More than alpha*n/2 hyperplanes G_{j,k}, k on ``side`` ("L" or "R"), are connected."""
    _require_hyperplanes(sample.params)
    if side not in ("L", "R"):
        raise ValueError(f"side must be 'L' or 'R', got {side!r}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if connected is None:
        connected = hyperplane_connectivity(sample, j)
    left, right = side_counts(connected)
    count = left if side == "L" else right
    return count > alpha * sample.params.n / 2


def event_B_all(sample: SampleGraph, alpha: float) -> bool:
    """Conjunction of B_L(j) and B_R(j) over all directions."""
    _require_hyperplanes(sample.params)
    for j in range(1, sample.params.d + 1):
        connected = hyperplane_connectivity(sample, j)
        if not (event_B(sample, j, "L", alpha, connected) and event_B(sample, j, "R", alpha, connected)):
            return False
    return True


def _require_hyperplanes(params: GraphParams):
    if params.d < 2:
        raise ValueError("hyperplane diagnostics need d >= 2")


def _occupied(sample: SampleGraph, e: int) -> bool:
    i = np.searchsorted(sample.edges, e)
    return bool(i < sample.edges.size and sample.edges[i] == e)


def _validate_start(sample: SampleGraph, v: int, v2: int, j: int, levels) -> tuple[int, set]:
    params = sample.params
    _require_hyperplanes(params)
    if not 1 <= j <= params.d:
        raise ValueError(f"direction {j!r} outside [1, {params.d}]")
    e = index_from_edge(v, v2, params)
    if not _occupied(sample, e):
        raise ValueError(f"edge ({v}, {v2}) is not occupied")
    direction = edge_decompose(e, params).direction
    if direction == j:
        raise ValueError(f"start edge runs in direction {j}; it must lie inside a hyperplane of direction {j}")
    half = params.n // 2
    level = decode_vertex(v, params)[j - 1]
    if level > half:
        raise ValueError(f"start edge has level {level} in direction {j}, which is not in L")
    levels = set(int(k) for k in levels)
    if any(not half < k <= params.n for k in levels):
        raise ValueError("connected hyperplane levels must lie in R")
    return half, levels


def explore_from_edge(sample: SampleGraph, v: int, v2: int, j: int, connected_levels,
                      *, max_cycles: int | None = None, probe_log: list | None = None) -> ExplorationOutcome:
    """Run the exploration from the occupied edge ``(v, v2)``.

    ``connected_levels`` are the levels r in R (1-based) whose hyperplane
    G_{j,r} is internally connected; the caller supplies them.  Every probed
    edge is appended to ``probe_log`` as ``(step, edge_index, EdgeClass)``
    when a list is given.
    """
    params = sample.params
    half, levels = _validate_start(sample, v, v2, j, connected_levels)
    stride = params.n ** (j - 1)

    def probe(step, x, y):
        e = index_from_edge(x, y, params)
        if probe_log is not None:
            probe_log.append((step, e, classify_edge(e, j, params)))
        return _occupied(sample, e)

    active = (v, v2)
    searched: set[int] = set()
    cycle = 0
    while max_cycles is None or cycle < max_cycles:
        cycle += 1
        searched.update(active)
        for x in active:
            own = (x // stride) % params.n
            for r in sorted(levels):
                if probe(2, x, x + (r - 1 - own) * stride):
                    return ExplorationOutcome(cycle, Reason.FOUND_HYPERPLANE, len(searched))
        found = set()
        for x in active:
            for y in _left_neighbors(x, j, params, half):
                if y not in searched and y not in found and probe(3, x, y):
                    found.add(y)
        if len(found) < 2:
            return ExplorationOutcome(cycle, Reason.STARVED, len(searched))
        active = tuple(sorted(found)[:2])
    return ExplorationOutcome(cycle, Reason.CYCLE_LIMIT, len(searched))


def _left_neighbors(x: int, j: int, params: GraphParams, half: int):
    n = params.n
    stride = 1
    for i in range(1, params.d + 1):
        own = (x // stride) % n
        base = x - own * stride
        for level in range(n):
            if level == own or (i == j and level >= half):
                continue
            yield base + level * stride
        stride *= n


def qualifying_edges(sample: SampleGraph, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Occupied edges inside V_L(j) running in a direction other than ``j``."""
    params = sample.params
    mask = (sample.directions() != j - 1) & (vertex_levels(sample.u, j, params) < params.n // 2)
    return sample.u[mask], sample.w[mask]


@dataclass(frozen=True)
class ExplorationBatch:
    """Per-start results of :func:`explore_edges`.

    ``reasons`` uses 1 = found hyperplane, 2 = starved, 3 = cycle limit.
    ``first_step2_failed`` and ``first_w`` describe the first cycle only:
    whether its Step 2 found no occupied edge into a connected hyperplane,
    and the size of its candidate set W (computed regardless).
    """

    cycles: np.ndarray
    reasons: np.ndarray
    searched: np.ndarray
    first_step2_failed: np.ndarray
    first_w: np.ndarray

    @property
    def starved(self) -> int:
        return int(np.count_nonzero(self.reasons == 2))

    @property
    def found(self) -> int:
        return int(np.count_nonzero(self.reasons == 1))


def explore_edges(sample: SampleGraph, j: int, connected: np.ndarray,
                  starts: tuple[np.ndarray, np.ndarray] | None = None,
                  *, max_cycles: int = 1 << 30) -> ExplorationBatch:
    """Compiled exploration from many start edges.

    ``connected`` is the boolean array from :func:`hyperplane_connectivity`
    for direction ``j``; only its R entries are consulted.  ``starts``
    defaults to every qualifying edge.
    """
    params = sample.params
    _require_hyperplanes(params)
    if starts is None:
        starts = qualifying_edges(sample, j)
    half = params.n // 2
    connected_r = np.asarray(connected, dtype=np.bool_).copy()
    connected_r[:half] = False
    indptr, indices = sample.adjacency
    max_degree = int(sample.degree.max()) if sample.degree.size else 0
    s0 = np.ascontiguousarray(starts[0], dtype=np.int64)
    s1 = np.ascontiguousarray(starts[1], dtype=np.int64)
    out = _kernels.explore_many(indptr, indices, s0, s1, params.n ** (j - 1), params.n, half,
                                connected_r, max_cycles, max_degree)
    return ExplorationBatch(*out)


@dataclass(frozen=True)
class OneCycleTrials:
    """First-cycle observations from independent conditioned samples.

    ``step2_failed[i]`` is True when trial i's Step 2 found no occupied edge
    into a connected R-hyperplane; ``w_size[i]`` is |W| from its Step 3.
    ``rejected`` counts samples discarded because B_R(j) failed.
    """

    step2_failed: np.ndarray
    w_size: np.ndarray
    rejected: int


def one_cycle_trials(params: GraphParams, pp, alpha: float, trials: int, seed: int,
                     *, j: int = 1) -> OneCycleTrials:
    """Run the first exploration cycle on ``trials`` independent samples given B_R(j).

    Each trial redraws its sample until B_R(j) holds, then starts from a
    uniformly chosen potential edge inside V_L(j) running in a direction
    other than ``j``, taken as occupied.  That edge is in E_LL(j) and joins
    the two active vertices, so forcing it open changes neither the
    conditioning event nor anything the first cycle probes.
    """
    _require_hyperplanes(params)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    d, n = params.d, params.n
    half = n // 2
    strides = [n**i for i in range(d)]
    others = [i for i in range(d) if i != j - 1]
    failed = np.empty(trials, np.bool_)
    w_size = np.empty(trials, np.int64)
    rejected = 0
    for t in range(trials):
        attempt = 0
        while True:
            sample_seed = seeding.mix_seed(seed, t, attempt)
            sample = build_sample(params, pp, sample_seed)
            connected = hyperplane_connectivity(sample, j)
            if event_B(sample, j, "R", alpha, connected):
                break
            rejected += 1
            attempt += 1
        rng = seeding.generator(sample_seed, seeding.EXPLORATION)
        coords = rng.integers(0, n, size=d)
        coords[j - 1] = rng.integers(0, half)
        i = others[int(rng.integers(0, len(others)))]
        level = int(rng.integers(0, n - 1))
        level += level >= coords[i]
        v0 = int(sum(int(c) * s for c, s in zip(coords, strides)))
        v1 = v0 + (level - int(coords[i])) * strides[i]
        batch = explore_edges(sample, j, connected, (np.array([v0]), np.array([v1])), max_cycles=1)
        failed[t] = batch.first_step2_failed[0]
        w_size[t] = batch.first_w[0]
    return OneCycleTrials(failed, w_size, rejected)


def step2_escape_bound(alpha: float, lam: float, m: int, n: int) -> float:
    """(1 - lambda/m)^(alpha n): chance that no probe of one cycle reaches a connected hyperplane."""
    if alpha < 0 or alpha * n > m:
        raise ValueError(f"alpha * n = {alpha * n:.6g} must lie in [0, m = {m}]")
    if not 0 <= lam <= m:
        raise ValueError(f"lambda = {lam} outside [0, {m}]")
    return ((m - lam) / m) ** (alpha * n)


def step3_starvation_bound(k: int, lam: float, params: GraphParams) -> float:
    """Upper bound on P(N_k <= 1), the chance that cycle k discovers fewer than two vertices.

    N_k dominates Bin((2d-1)(n-1) - 4k, lambda/m); the bound is
    q^e + (2d-1) n (lambda/m) q^(e-1) with e = (2d-1)(n-1) - 4k, q = 1 - lambda/m.
    """
    d, n, m = params.d, params.n, params.degree
    exponent = (2 * d - 1) * (n - 1) - 4 * k
    if exponent <= 0:
        raise ValueError(f"cycle {k} exhausts the {(2 * d - 1) * (n - 1)} candidate neighbours")
    if not 0 <= lam <= m:
        raise ValueError(f"lambda = {lam} outside [0, {m}]")
    q = (m - lam) / m
    return q**exponent + (2 * d - 1) * n * (lam / m) * q ** (exponent - 1)
