"""
Kernel vectors and the asymptotics matrix
=========================================

The right kernel has one vector per reach: 1 on the exclusive part, 0 off
the reach and a weighted vote in between on the common part. The left
kernel has one probability vector per cabal. Their outer product sum,
Gamma, is the projection every dynamics converges to.
"""

import numpy as np

from _graphs import SEVEN as g

from digraph_laplacians import (
    build_adjacency,
    comb_laplacian,
    gamma_matrix,
    kernel_basis,
    reach_decomposition,
    rw_laplacian,
)

np.set_printoptions(precision=4, suppress=True)

a = build_adjacency(g)
rd = reach_decomposition(g)

kb = kernel_basis(rw_laplacian(a), rd)
print("right kernel (one column per reach):")
print(kb.H0)
print("left kernel (one row per cabal):")
print(kb.H0bar)

G = gamma_matrix(kb)
print("Gamma * 9:")
print(G * 9)
print("idempotent:", np.allclose(G @ G, G))

# The combinatorial Laplacian has the same right kernel. Its left kernel is
# the random-walk one divided by the degree, so the two Gammas agree here
# only because every cabal of this graph has constant degree.
kbc = kernel_basis(comb_laplacian(a), rd)
print("same right kernel:", np.allclose(kbc.H0, kb.H0))
print("same Gamma:", np.allclose(gamma_matrix(kbc), G))
