import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamperc.graph import GraphParams
from hamperc.percolation import PercolationParam, ResourceLimitError
from hamperc.theory import (
    MomentBounds,
    WindowPoint,
    alpha_parameter,
    brute_force_connectivity,
    brute_force_factorial_moment,
    convert,
    expected_isolated,
    factorial_moment_bounds,
    falling_factorial,
    hyperplane_window,
    joint_isolation_moment,
    limiting_factorial_moment,
    poisson_pmf,
    predicted_connectivity,
)

from oracles import bfs_components, explicit_edges

TINY = [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 2), (3, 2)]


def test_predicted_connectivity_examples():
    assert predicted_connectivity(0.0) == pytest.approx(0.367879, abs=1e-6)
    assert predicted_connectivity(-math.log(math.log(2))) == pytest.approx(0.5, abs=1e-12)
    assert predicted_connectivity(50.0) == pytest.approx(1.0)
    assert predicted_connectivity(-50.0) == 0.0
    assert predicted_connectivity(-1e6) == 0.0


def test_predicted_connectivity_strictly_increasing():
    ts = np.linspace(-3, 5, 401)
    vals = [predicted_connectivity(t) for t in ts]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_hyperplane_window_examples():
    assert hyperplane_window(0.0, 2) == 0.0
    assert hyperplane_window(0.0, 7) == 0.0
    assert hyperplane_window(1.0, 2) == 0.5
    assert hyperplane_window(3.0, 3) == 2.0
    with pytest.raises(ValueError):
        hyperplane_window(1.0, 1)


def test_alpha_examples():
    assert alpha_parameter(0.0, 2, 0.1) == pytest.approx(math.exp(-1) - 0.1)
    assert alpha_parameter(0.0, 2, 0.1) == pytest.approx(0.2679, abs=1e-4)
    assert alpha_parameter(2.0, 2, 0.05) == pytest.approx(0.6422, abs=1e-4)
    with pytest.raises(ValueError):
        alpha_parameter(0.0, 2, math.exp(-1))
    with pytest.raises(ValueError):
        alpha_parameter(0.0, 2, 0.5)


def test_window_point():
    w = WindowPoint(0.0, GraphParams(2, 100))
    assert w.lam == pytest.approx(2 * math.log(100))
    assert w.p == pytest.approx(0.046517, abs=1e-6)
    with pytest.raises(ValueError):
        WindowPoint(-10.0, GraphParams(2, 100))
    with pytest.raises(ValueError):
        WindowPoint(5.0, GraphParams(1, 2))


def test_falling_factorial():
    assert falling_factorial(16, 3) == 16 * 15 * 14
    assert falling_factorial(3, 5) == 0
    assert falling_factorial(7, 0) == 1
    assert falling_factorial(2.5, 2) == pytest.approx(3.75)
    assert falling_factorial(2.0, 3) == 0.0
    assert falling_factorial(10**6, 3) == 10**6 * (10**6 - 1) * (10**6 - 2)


def test_moment_bounds_examples():
    g = GraphParams(1, 4)
    b = factorial_moment_bounds(2, g, 1.0)
    assert b.lower == pytest.approx(12 * (2 / 3) ** 6, rel=1e-12)
    assert b.upper == pytest.approx(12 * (2 / 3) ** 5, rel=1e-12)
    assert b.lower == pytest.approx(1.0535, abs=1e-4)
    assert b.upper == pytest.approx(1.5802, abs=1e-4)
    # on K_4 every pair is adjacent, so the upper bound is attained
    exact = brute_force_factorial_moment(g, 1 / 3, 2)
    assert b.lower < exact
    assert exact == pytest.approx(b.upper, rel=1e-12)

    g = GraphParams(2, 10)
    b = factorial_moment_bounds(1, g, 4.0)
    assert b.lower == b.upper == pytest.approx(expected_isolated(g, 4.0 / 18))
    b = factorial_moment_bounds(3, g, 0.0)
    assert b.lower == b.upper == 100 * 99 * 98


def test_moment_bounds_errors():
    g = GraphParams(1, 3)
    assert factorial_moment_bounds(4, g, 1.0) == MomentBounds(4, 0.0, 0.0)
    with pytest.raises(ValueError):
        factorial_moment_bounds(0, g, 1.0)
    with pytest.raises(ValueError):
        factorial_moment_bounds(1, g, 2.5)
    g = GraphParams(2, 2)
    assert factorial_moment_bounds(5, g, 1.0) == MomentBounds(5, 0.0, 0.0)
    # r > n but <= n^d: refused by default, available on request
    with pytest.raises(ValueError):
        factorial_moment_bounds(3, g, 1.0)
    loose = factorial_moment_bounds(3, g, 1.0, allow_loose=True)
    assert loose.lower <= brute_force_factorial_moment(g, 0.5, 3) <= loose.upper


def test_poisson_pmf_examples():
    for t in (-1.0, 0.0, 2.0):
        assert poisson_pmf(0, math.exp(-t)) == pytest.approx(predicted_connectivity(t), rel=1e-12)
    assert poisson_pmf(0, 0.0) == 1.0
    assert poisson_pmf(3, 0.0) == 0.0
    assert poisson_pmf(2, 1.0) == pytest.approx(1 / (2 * math.e), rel=1e-12)


@pytest.mark.parametrize("mu", [0.0, 0.1, 1.0, math.exp(2), 30.0])
def test_poisson_pmf_sums_to_one(mu):
    total = math.fsum(poisson_pmf(k, mu) for k in range(int(50 + 10 * mu) + 1))
    assert total == pytest.approx(1.0, abs=1e-12)


def _enumerated_connectivity(d, n, p):
    """Independent oracle: explicit edge list, every subset, BFS."""
    nv = n**d
    edges = sorted(tuple(sorted(e)) for e in explicit_edges(d, n))
    total = []
    for mask in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        if len(bfs_components(nv, chosen)) == 1:
            total.append(p ** len(chosen) * (1 - p) ** (len(edges) - len(chosen)))
    return math.fsum(total)


def test_brute_force_connectivity_examples():
    for p in (0.0, 0.2, 0.5, 1.0):
        assert brute_force_connectivity(GraphParams(1, 2), p) == pytest.approx(p, abs=1e-15)
        assert brute_force_connectivity(GraphParams(1, 3), p) == pytest.approx(
            3 * p**2 * (1 - p) + p**3, abs=1e-15)
        assert brute_force_connectivity(GraphParams(2, 2), p) == pytest.approx(
            4 * p**3 * (1 - p) + p**4, abs=1e-15)
    assert brute_force_connectivity(GraphParams(1, 3), 0.5) == pytest.approx(0.5)
    assert brute_force_connectivity(GraphParams(2, 2), 0.5) == pytest.approx(5 / 16)


@pytest.mark.parametrize("d, n", [(1, 4), (1, 5), (3, 2)])
def test_brute_force_connectivity_matches_bfs_enumeration(d, n):
    for p in (0.3, 0.7):
        assert brute_force_connectivity(GraphParams(d, n), p) == pytest.approx(
            _enumerated_connectivity(d, n, p), rel=1e-12)


def test_brute_force_connectivity_known_counts():
    # spanning connected subgraph counts of K_4 by edge number: 16, 15, 6, 1
    p = 0.5
    assert brute_force_connectivity(GraphParams(1, 4), p) == pytest.approx(38 / 64)


@pytest.mark.parametrize("d, n", TINY)
def test_brute_force_connectivity_nondecreasing(d, n):
    g = GraphParams(d, n)
    vals = [brute_force_connectivity(g, p) for p in np.linspace(0, 1, 41)]
    assert vals[0] == (1.0 if g.num_vertices == 1 else 0.0)
    assert vals[-1] == pytest.approx(1.0)
    assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))


def test_enumeration_guard():
    with pytest.raises(ResourceLimitError):
        brute_force_connectivity(GraphParams(2, 4), 0.5)
    with pytest.raises(ResourceLimitError):
        brute_force_factorial_moment(GraphParams(1, 8), 0.5, 1)


def test_factorial_moment_examples():
    assert brute_force_factorial_moment(GraphParams(1, 3), 0.5, 1) == pytest.approx(0.75)
    assert brute_force_factorial_moment(GraphParams(2, 2), 0.3, 5) == 0.0
    assert brute_force_factorial_moment(GraphParams(1, 5), 0.0, 3) == pytest.approx(60.0)
    assert brute_force_factorial_moment(GraphParams(3, 2), 0.0, 2) == pytest.approx(56.0)


def _ordered_tuple_moment(d, n, p, r):
    """Independent oracle: sum over ordered distinct r-tuples of prod over incident edges."""
    edges = explicit_edges(d, n)
    total = []
    for tup in itertools.permutations(range(n**d), r):
        incident = {e for e in edges if e & set(tup)}
        total.append((1 - p) ** len(incident))
    return math.fsum(total)


@pytest.mark.parametrize("d, n", TINY)
@pytest.mark.parametrize("r", [1, 2, 3])
def test_factorial_moment_three_ways(d, n, r):
    g = GraphParams(d, n)
    for p in (0.1, 0.45):
        exact = brute_force_factorial_moment(g, p, r)
        assert joint_isolation_moment(g, p, r) == pytest.approx(exact, rel=1e-10, abs=1e-300)
        assert _ordered_tuple_moment(d, n, p, r) == pytest.approx(exact, rel=1e-10, abs=1e-300)


@pytest.mark.parametrize("d, n", TINY)
@pytest.mark.parametrize("r", [1, 2, 3])
def test_sandwich(d, n, r):
    g = GraphParams(d, n)
    for lam in np.linspace(0, g.degree, 9):
        p = lam / g.degree
        b = factorial_moment_bounds(r, g, lam, allow_loose=True)
        exact = brute_force_factorial_moment(g, p, r)
        assert b.lower <= b.upper
        assert b.lower * (1 - 1e-12) <= exact <= b.upper * (1 + 1e-12) + 1e-300
        if r == 1:
            assert b.lower == pytest.approx(exact, rel=1e-10)


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("t", [-1.0, 0.0, 1.5])
def test_lower_bound_tends_to_limit(r, t):
    target = limiting_factorial_moment(t, r)
    devs = []
    for n in (10**2, 10**3, 10**4, 10**5):
        g = GraphParams(2, n)
        lam = 2 * math.log(n) + t
        devs.append(abs(factorial_moment_bounds(r, g, lam).lower / target - 1))
    assert all(b < a for a, b in zip(devs, devs[1:]))
    assert devs[-1] < 1e-2


def test_convert_examples():
    pp = PercolationParam.from_lambda(GraphParams(1, 101), 2.0)
    assert convert(pp, "p").value == pytest.approx(0.02)
    pp = PercolationParam.from_t(GraphParams(2, 100), 0.0)
    assert convert(pp, "lambda").value == pytest.approx(9.2103, abs=1e-4)
    assert convert(pp, "p").value == pytest.approx(0.046517, abs=1e-6)
    assert convert(convert(pp, "lambda"), "t").value == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        convert(pp, "beta")
    with pytest.raises(ValueError):
        PercolationParam.from_t(GraphParams(1, 3), 5.0)


@given(d=st.integers(1, 4), n=st.integers(2, 3000), frac=st.floats(0.001, 0.999))
@settings(max_examples=200, deadline=None)
def test_convert_round_trip(d, n, frac):
    g = GraphParams(d, n)
    pp = PercolationParam.from_p(g, frac)
    for path in (("lambda", "t", "p"), ("t", "p", "lambda"), ("p", "lambda", "t")):
        cur = pp
        for kind in path:
            cur = convert(cur, kind)
        assert cur.p == pytest.approx(pp.p, rel=1e-12)
        assert cur.lam == pytest.approx(pp.lam, rel=1e-12)
