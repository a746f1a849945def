"""
Hyperplanes and the exploration process
=======================================

Fixing one coordinate of H(d, n) gives a hyperplane, a copy of H(d-1, n).
Inside the window each hyperplane sees the window value (d-1)t/d, so about
exp(-exp(-(d-1)t/d)) of them are connected.  Starting from an edge in the
lower half of the levels, the exploration process almost always reaches one
of the connected upper hyperplanes.
"""
import math

import numpy as np

from hamperc import GraphParams, PercolationParam, build_sample, hyperplane_connectivity
from hamperc.exploration import (event_B_all, explore_edges, one_cycle_trials, step2_escape_bound,
                                 step3_starvation_bound)
from hamperc.theory import alpha_parameter, hyperplane_window, predicted_connectivity

g = GraphParams(2, 200)
t = 0.0
pp = PercolationParam.from_t(g, t)
alpha = alpha_parameter(t, g.d, 0.1)

samples = [build_sample(g, pp, seed) for seed in range(200)]
connected = np.array([hyperplane_connectivity(s, 1) for s in samples])
print("fraction of connected hyperplanes:", connected.mean().round(4),
      " limit:", round(predicted_connectivity(hyperplane_window(t, g.d)), 4))
print("frequency of event B:", np.mean([event_B_all(s, alpha) for s in samples]))

# %%
# Explore from every qualifying edge of one sample, for direction j = 1.
s = samples[0]
batch = explore_edges(s, 1, hyperplane_connectivity(s, 1))
print(f"{batch.reasons.size} explorations: {batch.found} reached a connected hyperplane, {batch.starved} starved;"
      f" longest took {batch.cycles.max()} cycles")

# %%
# One-cycle statistics on fresh samples against the explicit bounds.
res = one_cycle_trials(g, pp, alpha, 500, seed=3)
print("Step-2 failure:", res.step2_failed.mean(), "<= bound", round(step2_escape_bound(alpha, pp.lam, g.degree, g.n), 4))
print("P(N_1 <= 1):", (res.w_size <= 1).mean(), "<= bound", f"{step3_starvation_bound(1, pp.lam, g):.2e}")
print("mean |W| in the first cycle:", res.w_size.mean(), " ~ 3(n-1)p =", round(3 * (g.n - 1) * pp.p, 2))
print("alpha =", round(alpha, 4), "; exp(-1) - 0.1 =", round(math.exp(-1) - 0.1, 4))
