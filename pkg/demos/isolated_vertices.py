"""
Isolated vertices and their factorial moments
=============================================

The number Y of isolated vertices is close to Poisson(exp(-t)).  Compare the
empirical law with the Poisson pmf, and the factorial moments with the
two-sided bounds.
"""
import math

import numpy as np

from hamperc import GraphParams, PercolationParam, build_sample, count_isolated, factorial_moment_bounds, poisson_pmf
from hamperc.harness import empirical_factorial_moment, tv_distance_poisson

g = GraphParams(2, 150)
t = 0.5
pp = PercolationParam.from_t(g, t)
ys = np.array([count_isolated(build_sample(g, pp, seed)) for seed in range(2000)])

mu = math.exp(-t)
print("k  empirical  Poisson")
for k in range(5):
    print(f"{k}  {np.mean(ys == k):9.4f}  {poisson_pmf(k, mu):7.4f}")
print("TV distance to Poisson(exp(-t)):", round(tv_distance_poisson(ys, mu), 4))
print("TV distance to Poisson(exact mean):", round(tv_distance_poisson(ys, g.num_vertices * pp.q ** g.degree), 4))

# %%
# Factorial moments E[(Y)_r] sit between the bounds from "no two of the r vertices
# adjacent" and "all r on one line", and both bounds tend to exp(-t r).
for r in (1, 2, 3):
    b = factorial_moment_bounds(r, g, pp.lam)
    print(f"r={r}: {b.lower:.4f} <= {empirical_factorial_moment(ys, r):.4f} (empirical) <= {b.upper:.4f}"
          f"   limit {math.exp(-t * r):.4f}")
