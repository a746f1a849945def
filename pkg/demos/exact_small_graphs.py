"""
Exact answers on tiny graphs
============================

Graphs with at most 25 edges are small enough to sum over every edge subset.
Those exact values check the Monte Carlo engine.
"""
from hamperc import GraphParams, brute_force_connectivity, brute_force_factorial_moment, factorial_moment_bounds
from hamperc.percolation import small_instance_trials

for d, n in [(1, 3), (1, 4), (2, 2), (3, 2)]:
    g = GraphParams(d, n)
    for p in (0.2, 0.5, 0.8):
        exact = brute_force_connectivity(g, p)
        hits, _ = small_instance_trials(g, p, 50_000, seed=1)
        print(f"H({d},{n}) p={p}: exact {exact:.5f}   simulated {hits / 50_000:.5f}")

# %%
# The 4-cycle H(2,2) is connected iff at least three of its four edges are kept.
print("5/16 =", 5 / 16, "=", brute_force_connectivity(GraphParams(2, 2), 0.5))

# %%
# Exact factorial moments against the bounds on K_5.
g = GraphParams(1, 5)
lam = 1.5
for r in (1, 2, 3):
    b = factorial_moment_bounds(r, g, lam)
    print(f"r={r}: {b.lower:.5f} <= {brute_force_factorial_moment(g, lam / g.degree, r):.5f} <= {b.upper:.5f}")
