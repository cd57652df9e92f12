"""
Absorption and hitting times by linear algebra and by sampling
==============================================================

A walker at vertex i steps to j with probability S_ij, so it follows
edges backwards towards the sources of information. It ends in cabal m
with probability gamma_m(i), and the expected number of steps solves a
linear system on the vertices outside the cabals.
"""

import numpy as np

from _graphs import SEVEN as g

from digraph_laplacians import build_adjacency, hitting_times, kernel_basis, reach_decomposition, rw_laplacian
from digraph_laplacians.dynamics import absorption_probabilities
from digraph_laplacians.walks import sample_walks

a = build_adjacency(g)
rd = reach_decomposition(g)
lap = rw_laplacian(a)
kb = kernel_basis(lap, rd)
tau = hitting_times(lap, rd).tau

for j in (2, 6, 7):
    sample = sample_walks(a.S, rd, j, walks=100_000, seed=j)
    print(f"from {j}: absorption {np.round(absorption_probabilities(kb, j), 4)} "
          f"sampled {np.round(sample.absorption_frequencies(rd.k), 4)} | "
          f"hitting time {tau[j - 1]:.3f} sampled {sample.mean_hitting_time():.3f}")
