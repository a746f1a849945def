"""Compiled inner loops.

Everything here works on flat int64 arrays and 0-based directions/levels.
The public modules wrap these with validation and 1-based conventions.
"""
import math

import numpy as np
from numba import njit


# -- edge enumeration ---------------------------------------------------------

@njit(cache=True)
def pair_from_index(q, n):
    """Lexicographic pair (a, b), a < b, with position ``q`` among C(n, 2)."""
    disc = (2.0 * n - 1.0) ** 2 - 8.0 * q
    a = int(((2.0 * n - 1.0) - math.sqrt(max(disc, 0.0))) // 2.0)
    if a < 0:
        a = 0
    # float estimate can be off by one either way
    while a > 0 and a * n - a * (a + 1) // 2 > q:
        a -= 1
    while (a + 1) * n - (a + 1) * (a + 2) // 2 <= q:
        a += 1
    b = q - (a * n - a * (a + 1) // 2) + a + 1
    return a, b


@njit(cache=True)
def decode_edges(edges, n, d):
    pairs = n * (n - 1) // 2
    lines = 1
    for _ in range(d - 1):
        lines *= n
    per_dir = lines * pairs
    u = np.empty(edges.size, np.int64)
    w = np.empty(edges.size, np.int64)
    for i in range(edges.size):
        e = edges[i]
        j = e // per_dir
        rest = e - j * per_dir
        line = rest // pairs
        a, b = pair_from_index(rest - line * pairs, n)
        stride = 1
        for _ in range(j):
            stride *= n
        base = line % stride + (line // stride) * stride * n
        u[i] = base + a * stride
        w[i] = base + b * stride
    return u, w


# -- geometric skip sampling ---------------------------------------------------

@njit(cache=True)
def skip_sample(rng, total, log_q, capacity):
    """Indices in [0, total) kept independently with probability 1 - exp(log_q).

    Each gap between kept indices is floor(log(U) / log_q) with U uniform on
    (0, 1], one draw per kept index plus one terminating draw.
    """
    out = np.empty(max(capacity, 16), np.int64)
    k = 0
    pos = -1
    while True:
        u = 1.0 - rng.random()
        # compare as float first: for tiny p the gap can be inf
        jump = np.floor(math.log(u) / log_q)
        if not jump < total - pos - 1:
            break
        pos += np.int64(jump) + 1
        if k == out.size:
            grown = np.empty(out.size * 2, np.int64)
            grown[:k] = out[:k]
            out = grown
        out[k] = pos
        k += 1
    return out[:k]


@njit(cache=True)
def thin(rng, count, ratio):
    """Keep mask for ``count`` items, each kept independently when U < ratio."""
    keep = np.empty(count, np.bool_)
    for i in range(count):
        keep[i] = rng.random() < ratio
    return keep


# -- union-find ------------------------------------------------------------------

@njit(cache=True)
def find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def union(parent, rank, a, b):
    ra = find(parent, a)
    rb = find(parent, b)
    if ra == rb:
        return False
    if rank[ra] < rank[rb]:
        ra, rb = rb, ra
    parent[rb] = ra
    if rank[ra] == rank[rb]:
        rank[ra] += 1
    return True


@njit(cache=True)
def union_edges(parent, rank, u, w):
    merges = 0
    for i in range(u.size):
        if union(parent, rank, u[i], w[i]):
            merges += 1
    return merges


@njit(cache=True)
def root_labels(parent):
    out = np.empty(parent.size, np.int64)
    for x in range(parent.size):
        out[x] = find(parent, x)
    return out


@njit(cache=True)
def largest_component(parent):
    """(size, root) of the largest component; ties go to the smallest root."""
    nv = parent.size
    sizes = np.zeros(nv, np.int64)
    for x in range(nv):
        sizes[find(parent, x)] += 1
    best = 0
    best_root = 0
    for r in range(nv):
        if sizes[r] > best:
            best = sizes[r]
            best_root = r
    return best, best_root


@njit(cache=True)
def hyperplane_merges(u, w, edges, per_dir, j0, stride, n, nv):
    """Successful unions per level k, over edges lying inside hyperplanes G_{j0,k}.

    An edge lies inside a hyperplane of direction j0 exactly when its own
    direction differs from j0; both endpoints then share their j0-level.
    """
    parent = np.arange(nv)
    rank = np.zeros(nv, np.int8)
    merges = np.zeros(n, np.int64)
    for i in range(u.size):
        if edges[i] // per_dir == j0:
            continue
        if union(parent, rank, u[i], w[i]):
            merges[(u[i] // stride) % n] += 1
    return merges


@njit(cache=True)
def single_hyperplane_merges(u, w, edges, per_dir, j0, stride, n, level, nv):
    parent = np.arange(nv)
    rank = np.zeros(nv, np.int8)
    merges = 0
    for i in range(u.size):
        if edges[i] // per_dir == j0 or (u[i] // stride) % n != level:
            continue
        if union(parent, rank, u[i], w[i]):
            merges += 1
    return merges


# -- adjacency -------------------------------------------------------------------

@njit(cache=True)
def build_csr(u, w, degree):
    nv = degree.size
    indptr = np.zeros(nv + 1, np.int64)
    for x in range(nv):
        indptr[x + 1] = indptr[x] + degree[x]
    fill = indptr[:-1].copy()
    indices = np.empty(indptr[nv], np.int64)
    for i in range(u.size):
        a = u[i]
        b = w[i]
        indices[fill[a]] = b
        fill[a] += 1
        indices[fill[b]] = a
        fill[b] += 1
    return indptr, indices


# -- tiny-instance enumeration and batched trials ---------------------------------

@njit(cache=True)
def enumerate_subsets(eu, ew, nv):
    """Tabulate all 2^M edge subsets by size k.

    Returns ``connected[k]`` (number of k-subsets spanning a connected graph)
    and ``isolated[k, y]`` (number of k-subsets leaving exactly y isolated
    vertices).  Counts are exact integers.
    """
    m = eu.size
    connected = np.zeros(m + 1, np.int64)
    isolated = np.zeros((m + 1, nv + 1), np.int64)
    parent = np.empty(nv, np.int64)
    rank = np.empty(nv, np.int8)
    deg = np.empty(nv, np.int64)
    for mask in range(1 << m):
        for x in range(nv):
            parent[x] = x
            rank[x] = 0
            deg[x] = 0
        k = 0
        merges = 0
        for i in range(m):
            if (mask >> i) & 1:
                k += 1
                deg[eu[i]] += 1
                deg[ew[i]] += 1
                if union(parent, rank, eu[i], ew[i]):
                    merges += 1
        if merges == nv - 1:
            connected[k] += 1
        y = 0
        for x in range(nv):
            if deg[x] == 0:
                y += 1
        isolated[k, y] += 1
    return connected, isolated


@njit(cache=True)
def connectivity_trials(rng, eu, ew, nv, log_q, mode, reps):
    """Run ``reps`` independent percolation trials on a small explicit edge list.

    ``mode`` is 0 for p = 0, 2 for p = 1, 1 otherwise.  Returns the number of
    connected outcomes and the isolated-vertex count of every trial.
    """
    m = eu.size
    parent = np.empty(nv, np.int64)
    rank = np.empty(nv, np.int8)
    deg = np.empty(nv, np.int64)
    ys = np.empty(reps, np.int64)
    hits = 0
    for r in range(reps):
        for x in range(nv):
            parent[x] = x
            rank[x] = 0
            deg[x] = 0
        merges = 0
        if mode == 2:
            for i in range(m):
                deg[eu[i]] += 1
                deg[ew[i]] += 1
                if union(parent, rank, eu[i], ew[i]):
                    merges += 1
        elif mode == 1:
            pos = -1
            while True:
                u = 1.0 - rng.random()
                jump = np.floor(math.log(u) / log_q)
                if not jump < m - pos - 1:
                    break
                pos += int(jump) + 1
                deg[eu[pos]] += 1
                deg[ew[pos]] += 1
                if union(parent, rank, eu[pos], ew[pos]):
                    merges += 1
        if merges == nv - 1:
            hits += 1
        y = 0
        for x in range(nv):
            if deg[x] == 0:
                y += 1
        ys[r] = y
    return hits, ys


# -- exploration ---------------------------------------------------------------------

@njit(cache=True)
def explore_edge(indptr, indices, v0, v1, stride, n, half, connected_r, searched, stamp,
                 in_w, cand, max_cycles):
    """Exploration from the occupied edge (v0, v1) towards connected R-hyperplanes.

    ``connected_r[k]`` flags levels k in R whose hyperplane is internally
    connected.  Entries of ``searched`` equal to ``stamp`` form the search
    set S.  ``in_w`` (all False on entry and exit) and ``cand`` are scratch
    space for the candidate set W; ``cand`` must hold 2 * max degree items.

    Returns (cycle, reason, |S|, first_cycle_step2_failed, first_cycle_w)
    with reason 1 = reached a connected hyperplane in Step 2, 2 = starved in
    Step 3 (|W| < 2), 3 = cycle cap hit.  ``first_cycle_w`` is |W| from the
    first cycle's Step 3, computed even when Step 2 succeeded.
    """
    a0 = v0
    a1 = v1
    size_s = 0
    cycle = 0
    first_failed = False
    first_w = -1
    while cycle < max_cycles:
        cycle += 1
        # Step 2
        searched[a0] = stamp
        searched[a1] = stamp
        size_s += 2
        hit = False
        for t in range(2):
            a = a0 if t == 0 else a1
            for p in range(indptr[a], indptr[a + 1]):
                lx = (indices[p] // stride) % n
                if lx >= half and connected_r[lx]:
                    hit = True
        # Step 3
        nw = 0
        for t in range(2):
            a = a0 if t == 0 else a1
            for p in range(indptr[a], indptr[a + 1]):
                x = indices[p]
                if (x // stride) % n < half and searched[x] != stamp and not in_w[x]:
                    in_w[x] = True
                    cand[nw] = x
                    nw += 1
        # Step 4 rule: the two smallest vertex indices in W
        b0 = -1
        b1 = -1
        for q in range(nw):
            x = cand[q]
            in_w[x] = False
            if b0 == -1 or x < b0:
                b1 = b0
                b0 = x
            elif b1 == -1 or x < b1:
                b1 = x
        if cycle == 1:
            first_failed = not hit
            first_w = nw
        if hit:
            return cycle, 1, size_s, first_failed, first_w
        if nw < 2:
            return cycle, 2, size_s, first_failed, first_w
        a0 = b0
        a1 = b1
    return cycle, 3, size_s, first_failed, first_w


@njit(cache=True)
def explore_many(indptr, indices, starts0, starts1, stride, n, half, connected_r, max_cycles,
                 max_degree):
    nv = indptr.size - 1
    searched = np.zeros(nv, np.int64)
    in_w = np.zeros(nv, np.bool_)
    cand = np.empty(2 * max_degree + 2, np.int64)
    count = starts0.size
    cycles = np.empty(count, np.int64)
    reasons = np.empty(count, np.int8)
    sizes = np.empty(count, np.int64)
    failed1 = np.empty(count, np.bool_)
    w1 = np.empty(count, np.int64)
    for i in range(count):
        c, r, s, f, w = explore_edge(indptr, indices, starts0[i], starts1[i], stride, n, half,
                                     connected_r, searched, i + 1, in_w, cand, max_cycles)
        cycles[i] = c
        reasons[i] = r
        sizes[i] = s
        failed1[i] = f
        w1[i] = w
    return cycles, reasons, sizes, failed1, w1
