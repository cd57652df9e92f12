"""
Consensus and diffusion in continuous time
==========================================

Consensus ``x' = -L x`` averages opinions along edges; diffusion
``p' = -p L`` moves mass against them. Both settle on ``Gamma x0`` and
``p0 Gamma``.
"""

import numpy as np

from _graphs import SEVEN as g

from digraph_laplacians import build_adjacency, matrix_exponential, rw_laplacian, simulate_continuous

np.set_printoptions(precision=5, suppress=True)

lap = rw_laplacian(build_adjacency(g))
e7 = np.eye(7)[6]

rec = simulate_continuous(lap, e7, horizon=50.0, samples=10, mode="diffusion")
for t, p in zip(rec.times, rec.states):
    print(f"t={t:5.1f}", p, "mass", round(p.sum(), 12))
print("predicted limit * 9:", rec.predicted_limit * 9)
print("final deviation:", rec.final_deviation)

# Starting consensus from vertex 7 alone: no cabal holds that opinion,
# so it dies out.
rec = simulate_continuous(lap, e7, horizon=50.0, samples=5, mode="consensus")
print("consensus final state:", rec.final)

# The integrator against the matrix exponential at t = 1.
x0 = np.random.default_rng(0).normal(size=7)
rk = simulate_continuous(lap, x0, horizon=1.0, samples=1).final
print("RK4 vs expm:", np.abs(rk - matrix_exponential(lap.M, 1.0) @ x0).max())
