"""Deterministic combinatorics of the Hamming graph H(d, n).

Vertices of H(d, n) are d-tuples over {1, ..., n}; two vertices are adjacent
when they differ in exactly one coordinate.  Nothing here is random and no
adjacency structure is ever materialised: every quantity is computed from the
implicit structure.

Conventions
-----------
* Coordinates, directions ``j`` and levels ``k`` are 1-based at the public
  interface, 0-based internally.
* A vertex index is the little-endian mixed-radix code
  ``sum((v_i - 1) * n**(i - 1))``, in ``[0, n**d)``.
* Edge indices run over ``[0, M)`` grouped by direction, then by line (the
  n vertices agreeing everywhere except in that direction), then by the
  lexicographic level pair ``a < b``.  Each direction therefore owns one
  contiguous block of ``n**(d-1) * n(n-1)/2`` indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels

INDEX_CAPACITY = 2**63 - 1


@dataclass(frozen=True)
class GraphParams:
    """Dimension ``d`` and side length ``n`` of H(d, n) plus derived counts."""

    d: int
    n: int

    def __post_init__(self):
        if int(self.d) != self.d or int(self.n) != self.n:
            raise ValueError(f"d and n must be integers, got d={self.d!r}, n={self.n!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "n", int(self.n))
        if self.d < 1:
            raise ValueError(f"dimension d must be >= 1, got {self.d}")
        if self.n < 2:
            raise ValueError(f"side length n must be >= 2, got {self.n}")
        # Python ints do not overflow, so the guard is exact.
        if self.n**self.d > INDEX_CAPACITY:
            raise OverflowError(f"n^d = {self.n}^{self.d} exceeds the 64-bit index capacity")
        if self.d * self.n**self.d * (self.n - 1) // 2 > INDEX_CAPACITY:
            raise OverflowError(f"edge count of H({self.d},{self.n}) exceeds the 64-bit index capacity")

    @property
    def num_vertices(self) -> int:
        return self.n**self.d

    @property
    def degree(self) -> int:
        """m = d(n-1), the degree of every vertex."""
        return self.d * (self.n - 1)

    @property
    def pairs_per_line(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def lines_per_direction(self) -> int:
        return self.n ** (self.d - 1)

    @property
    def edges_per_direction(self) -> int:
        return self.lines_per_direction * self.pairs_per_line

    @property
    def num_edges(self) -> int:
        return self.d * self.edges_per_direction


class HyperplaneId(NamedTuple):
    """Hyperplane G_jk: all vertices whose j-th coordinate equals k (1-based)."""

    j: int
    k: int


class EdgeParts(NamedTuple):
    """Canonical decomposition of an edge index.

    ``direction`` and the levels ``a < b`` are 1-based; ``line`` is the
    0-based index of the line within its direction.
    """

    direction: int
    line: int
    a: int
    b: int


def edge_count(params: GraphParams) -> int:
    """Number of edges, d * n^d * (n-1) / 2."""
    return params.d * params.num_vertices * (params.n - 1) // 2


def _check_vertex(v: int, params: GraphParams) -> int:
    if int(v) != v or not 0 <= v < params.num_vertices:
        raise ValueError(f"vertex index {v!r} outside [0, {params.num_vertices})")
    return int(v)


def _check_direction(j: int, params: GraphParams) -> int:
    if int(j) != j or not 1 <= j <= params.d:
        raise ValueError(f"direction {j!r} outside [1, {params.d}]")
    return int(j)


def encode_vertex(coords: Sequence[int], params: GraphParams) -> int:
    """Map 1-based coordinates ``(v_1, ..., v_d)`` to a vertex index."""
    if len(coords) != params.d:
        raise ValueError(f"expected {params.d} coordinates, got {len(coords)}")
    index = 0
    for c in reversed(coords):
        if int(c) != c or not 1 <= c <= params.n:
            raise ValueError(f"coordinate {c!r} outside [1, {params.n}]")
        index = index * params.n + (int(c) - 1)
    return index


def decode_vertex(v: int, params: GraphParams) -> tuple[int, ...]:
    """Inverse of :func:`encode_vertex`."""
    v = _check_vertex(v, params)
    coords = []
    for _ in range(params.d):
        v, digit = divmod(v, params.n)
        coords.append(digit + 1)
    return tuple(coords)


def neighbors(v: int, params: GraphParams) -> list[int]:
    """All d(n-1) neighbours of ``v``, ordered by direction then by level."""
    v = _check_vertex(v, params)
    n = params.n
    out = []
    stride = 1
    for _ in range(params.d):
        own = (v // stride) % n
        base = v - own * stride
        out.extend(base + level * stride for level in range(n) if level != own)
        stride *= n
    return out


def _pair_index(a: int, b: int, n: int) -> int:
    # 0-based levels, a < b
    return a * n - a * (a + 1) // 2 + (b - a - 1)


def edge_decompose(e: int, params: GraphParams) -> EdgeParts:
    if int(e) != e or not 0 <= e < params.num_edges:
        raise ValueError(f"edge index {e!r} outside [0, {params.num_edges})")
    e = int(e)
    j, rest = divmod(e, params.edges_per_direction)
    line, pair = divmod(rest, params.pairs_per_line)
    a, b = _kernels.pair_from_index(pair, params.n)
    return EdgeParts(j + 1, line, int(a) + 1, int(b) + 1)


def _line_base(line: int, j0: int, n: int) -> int:
    # vertex index of the line's member at level 0 in direction j0
    low_span = n**j0
    low, high = line % low_span, line // low_span
    return low + high * low_span * n


def edge_from_index(e: int, params: GraphParams) -> tuple[int, int]:
    """Endpoints ``(v, w)`` of edge ``e`` with ``v < w``."""
    j, line, a, b = edge_decompose(e, params)
    stride = params.n ** (j - 1)
    base = _line_base(line, j - 1, params.n)
    return base + (a - 1) * stride, base + (b - 1) * stride


def index_from_edge(v: int, w: int, params: GraphParams) -> int:
    """Edge index of the unordered pair ``{v, w}``; they must be adjacent."""
    v = _check_vertex(v, params)
    w = _check_vertex(w, params)
    if v > w:
        v, w = w, v
    n = params.n
    cv, cw = decode_vertex(v, params), decode_vertex(w, params)
    differ = [i for i in range(params.d) if cv[i] != cw[i]]
    if len(differ) != 1:
        raise ValueError(f"vertices {v} and {w} are not adjacent in H({params.d},{n})")
    j0 = differ[0]
    a, b = cv[j0] - 1, cw[j0] - 1
    low_span = n**j0
    base = v - a * low_span
    line = base % low_span + (base // (low_span * n)) * low_span
    return (j0 * params.edges_per_direction + line * params.pairs_per_line
            + _pair_index(a, b, n))


def hyperplane_of(v: int, j: int, params: GraphParams) -> HyperplaneId:
    """The hyperplane in direction ``j`` containing ``v``."""
    j = _check_direction(j, params)
    return HyperplaneId(j, decode_vertex(v, params)[j - 1])


def hyperplane_vertices(h: HyperplaneId, params: GraphParams) -> np.ndarray:
    """Sorted indices of the n^(d-1) vertices of hyperplane ``h``."""
    j = _check_direction(h.j, params)
    if not 1 <= h.k <= params.n:
        raise ValueError(f"level {h.k!r} outside [1, {params.n}]")
    return np.flatnonzero(vertex_levels(np.arange(params.num_vertices), j, params) == h.k - 1)


def vertex_levels(vertices: np.ndarray, j: int, params: GraphParams) -> np.ndarray:
    """0-based level of each vertex in direction ``j`` (1-based)."""
    return (np.asarray(vertices, dtype=np.int64) // params.n ** (j - 1)) % params.n


def edge_directions(edges: np.ndarray, params: GraphParams) -> np.ndarray:
    """0-based direction of each edge index."""
    return np.asarray(edges, dtype=np.int64) // params.edges_per_direction


def edge_endpoints(edges: np.ndarray, params: GraphParams) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`edge_from_index` over an int64 array of indices."""
    edges = np.ascontiguousarray(edges, dtype=np.int64)
    return _kernels.decode_edges(edges, params.n, params.d)
