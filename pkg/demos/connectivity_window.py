"""
Connectivity across the critical window
=======================================

Sweep t = lambda - d log n on a few Hamming graphs and compare the fraction
of connected samples with exp(-exp(-t)).
"""
import math

import numpy as np

from hamperc import GraphParams, PercolationParam, build_sample, connectivity_report, predicted_connectivity

# A 2-dimensional graph with 40 000 vertices; each sample takes a few milliseconds.
g = GraphParams(2, 200)
reps = 300

print(f"{'t':>5} {'lambda':>8} {'p':>8} {'P(conn)':>8} {'limit':>8}")
for t in np.arange(-2.0, 3.01, 1.0):
    pp = PercolationParam.from_t(g, t)
    hits = sum(connectivity_report(build_sample(g, pp, seed)).is_connected for seed in range(reps))
    print(f"{t:5.1f} {pp.lam:8.3f} {pp.p:8.5f} {hits / reps:8.3f} {predicted_connectivity(t):8.3f}")

# %%
# The same window in other dimensions.  At t = 0 the limit is 1/e whatever d is,
# while the finite-size value drifts upward in higher d with small n.
for d, n in [(1, 2000), (2, 200), (3, 40)]:
    h = GraphParams(d, n)
    pp = PercolationParam.from_t(h, 0.0)
    hits = sum(connectivity_report(build_sample(h, pp, seed)).is_connected for seed in range(reps))
    print(f"H({d},{n}): P(connected) = {hits / reps:.3f}   exact E[Y] = {h.num_vertices * pp.q ** h.degree:.3f}"
          f"   exp(-E[Y]) = {math.exp(-h.num_vertices * pp.q ** h.degree):.3f}")

# %%
# Disconnected samples inside the window are almost always one giant component
# plus isolated vertices.
pp = PercolationParam.from_t(g, -1.0)
reports = [connectivity_report(build_sample(g, pp, seed)) for seed in range(reps)]
print("giant + isolated:", np.mean([r.giant_plus_isolated for r in reports]))
print("mean isolated count:", np.mean([r.Y for r in reports]), "vs exp(1) =", math.e)
