"""
Reaches, cabals and the block structure of a digraph
====================================================

Every vertex of a weakly connected digraph is reachable from at least one
source component (a *cabal*). The set reached from a cabal is a *reach*;
vertices reached from more than one cabal form the *common part*.
"""

from _graphs import SEVEN as g

from digraph_laplacians import (
    block_triangularize,
    build_adjacency,
    connectivity_class,
    reach_decomposition,
    rw_laplacian,
    strongly_connected_components,
)

print("connectivity:", connectivity_class(g))

cond = strongly_connected_components(g)
print("SCCs in topological order:", [sorted(c) for c in cond.sccs])

rd = reach_decomposition(g, cond)
for m, r in enumerate(rd, start=1):
    print(f"R{m} = {sorted(r.reach)}  cabal {sorted(r.cabal)}  "
          f"exclusive {sorted(r.exclusive)}  common {sorted(r.common)}")

# Reordering vertices SCC by SCC makes the Laplacian lower block triangular.
# Blocks that are Laplacians in their own right are exactly the cabals.
perm, permuted, blocks = block_triangularize(rw_laplacian(build_adjacency(g)), cond)
print("vertex order:", perm)
print(permuted)
for b in blocks:
    print(sorted(b.vertices), "actual Laplacian" if b.actual else "strictly dominant")
