"""
Discrete iteration and Cesaro averages
======================================

``x <- S x`` need not converge: the 3-cycle inside the example graph makes
the iterates rotate forever. Their running average still converges, with
error proportional to 1 / steps.
"""

import numpy as np

from _graphs import CYCLE, SEVEN

from digraph_laplacians import build_adjacency, cesaro_matrix, simulate_discrete, time_one_map, rw_laplacian
from digraph_laplacians.kernels import asymptotics_matrix

np.set_printoptions(precision=4, suppress=True)

rec = simulate_discrete(build_adjacency(CYCLE).S, [1.0, 0.0, 0.0], steps=6)
for t, x, c in zip(rec.times, rec.states, rec.cesaro):
    print(t, x, c)

a = build_adjacency(SEVEN)
G = asymptotics_matrix(rw_laplacian(a))
for steps in (10**3, 10**4, 10**5):
    err = np.abs(cesaro_matrix(a.S, steps) - G).max()
    print(f"steps={steps:>6}  error={err:.3e}  error*steps={err * steps:.4f}")

# exp(-L) is a stochastic matrix whose support is the transitive closure.
Sd = time_one_map(rw_laplacian(a))
print("time-one map entry (7, 1):", Sd[6, 0], "| edge 1->7 exists:", bool(a.Q[6, 0]))
