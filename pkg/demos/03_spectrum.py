"""
Spectra, Gersgorin discs and defective eigenvalues
==================================================

Directed Laplacians need not have a real spectrum or a full set of
eigenvectors. The eigenvalues come from a Hessenberg QR iteration; a rank
test tells whether a repeated eigenvalue carries a Jordan block.
"""

from pathlib import Path

import numpy as np

from _graphs import CYCLE, SEVEN

from digraph_laplacians import (
    Digraph,
    build_adjacency,
    comb_laplacian,
    eigenvalues,
    gersgorin_check,
    rw_laplacian,
)
from digraph_laplacians.report import spectrum_svg
from digraph_laplacians.spectrum import defective_eigenvalues

a = build_adjacency(SEVEN)
for lap in (comb_laplacian(a), rw_laplacian(a)):
    s = eigenvalues(lap.M)
    print(lap.kind, np.round(s.eigenvalues, 6) + 0)
    print("  zero multiplicity", s.zero_multiplicity(), "| inside Gersgorin discs:",
          gersgorin_check(lap, s).contained)

# A directed 3-cycle already has complex eigenvalues.
print("3-cycle:", np.round(eigenvalues(rw_laplacian(build_adjacency(CYCLE)).M).eigenvalues, 6))

# This strongly connected graph has eigenvalue 2 twice but only one
# eigenvector for it.
w = Digraph.from_edges(4, [(1, 2), (1, 4), (2, 3), (3, 1), (4, 1)])
L = comb_laplacian(build_adjacency(w)).M
for lam, alg, geo in defective_eigenvalues(L):
    print(f"eigenvalue {lam.real:.6f}: algebraic {alg}, geometric {geo}")

out = Path("spectrum.svg")
out.write_text(spectrum_svg({
    "eigenvalues of S": eigenvalues(a.S).eigenvalues,
    "eigenvalues of -L (rw)": -eigenvalues(rw_laplacian(a).M).eigenvalues,
}))
print("wrote", out)
