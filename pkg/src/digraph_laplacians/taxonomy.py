"""Strongly connected components, condensation and the reach taxonomy.

A *reach* is a maximal reachable set ``R(i)``. Inside a reach, the *cabal*
``B`` is the source SCC from which the whole reach is reachable, the
*exclusive part* ``H`` holds the vertices reachable from no other reach,
and the *common part* ``C = R \\ H`` the rest.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import Digraph

__all__ = [
    "Condensation",
    "Reach",
    "ReachDecomposition",
    "NotWeaklyConnected",
    "strongly_connected_components",
    "weak_components",
    "connectivity_class",
    "reach_decomposition",
    "reachable_set",
]


class NotWeaklyConnected(ValueError):
    """Raised when an operation needs a weakly connected digraph."""

    def __init__(self, components):
        self.components = [sorted(c) for c in components]
        listing = "; ".join("{" + ",".join(map(str, c)) + "}" for c in self.components)
        super().__init__(
            f"graph has {len(self.components)} weakly connected components: {listing}"
        )


@dataclass(frozen=True)
class Condensation:
    """SCC partition in topological order plus the condensation DAG.

    ``sccs[a]`` is the vertex set (1-based ids) of SCC number ``a``; the
    list is already topologically sorted, so every DAG edge ``(a, b)``
    satisfies ``a < b`` and the reordered adjacency is lower block
    triangular. ``component_of[v - 1]`` is the SCC index of vertex ``v``.
    """

    sccs: tuple[frozenset[int], ...]
    dag_edges: frozenset[tuple[int, int]]
    component_of: tuple[int, ...]

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(range(len(self.sccs)))

    def in_degree(self, a: int) -> int:
        return sum(1 for (_, b) in self.dag_edges if b == a)

    def sources(self) -> list[int]:
        targets = {b for (_, b) in self.dag_edges}
        return [a for a in range(len(self.sccs)) if a not in targets]

    def vertex_order(self) -> list[int]:
        """Vertices listed SCC by SCC, ascending ids within each SCC."""
        return [v for scc in self.sccs for v in sorted(scc)]


@dataclass(frozen=True)
class Reach:
    reach: frozenset[int]
    cabal: frozenset[int]
    exclusive: frozenset[int]
    common: frozenset[int]


@dataclass(frozen=True)
class ReachDecomposition:
    reaches: tuple[Reach, ...]
    condensation: Condensation

    @property
    def k(self) -> int:
        return len(self.reaches)

    @property
    def cabal_union(self) -> frozenset[int]:
        return frozenset().union(*(r.cabal for r in self.reaches))

    def __getitem__(self, m: int) -> Reach:
        return self.reaches[m]

    def __iter__(self):
        return iter(self.reaches)

    def __len__(self):
        return len(self.reaches)


def _tarjan(adj: list[list[int]]) -> list[list[int]]:
    # Iterative Tarjan; 0-based vertices in, 0-based SCCs out.
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while i < len(adj[v]):
                w = adj[v][i]
                i += 1
                if index[w] == -1:
                    work[-1] = (v, i)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def strongly_connected_components(g: Digraph) -> Condensation:
    """Partition ``g`` into SCCs and sort them topologically.

    Ties in the topological order go to the SCC with the smallest vertex id.
    """
    raw = _tarjan(g.adjacency_lists())
    comp = [0] * g.n
    for c, members in enumerate(raw):
        for v in members:
            comp[v] = c
    edges = {(comp[u - 1], comp[v - 1]) for (u, v) in g.edges if comp[u - 1] != comp[v - 1]}

    indeg = [0] * len(raw)
    succ: list[list[int]] = [[] for _ in raw]
    for a, b in edges:
        indeg[b] += 1
        succ[a].append(b)
    key = [min(members) for members in raw]
    heap = [(key[c], c) for c in range(len(raw)) if indeg[c] == 0]
    heapq.heapify(heap)
    topo = []
    while heap:
        _, c = heapq.heappop(heap)
        topo.append(c)
        for b in succ[c]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (key[b], b))

    position = {c: p for p, c in enumerate(topo)}
    sccs = tuple(frozenset(v + 1 for v in raw[c]) for c in topo)
    dag = frozenset((position[a], position[b]) for a, b in edges)
    component_of = tuple(position[comp[v]] for v in range(g.n))
    return Condensation(sccs=sccs, dag_edges=dag, component_of=component_of)


def weak_components(g: Digraph) -> list[frozenset[int]]:
    """Connected components of the underlying undirected graph."""
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        parent[find(u)] = find(v)
    groups: dict[int, set[int]] = {}
    for v in range(1, g.n + 1):
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def connectivity_class(g: Digraph) -> str:
    """Return ``"strong"``, ``"unilateral"``, ``"weak"`` or ``"disconnected"``.

    A digraph is unilaterally connected iff its condensation has a directed
    Hamiltonian path, i.e. consecutive SCCs in topological order are joined
    by an edge.
    """
    cond = strongly_connected_components(g)
    if len(cond.sccs) == 1:
        return "strong"
    if all((a, a + 1) in cond.dag_edges for a in range(len(cond.sccs) - 1)):
        return "unilateral"
    if len(weak_components(g)) == 1:
        return "weak"
    return "disconnected"


def reachable_set(g: Digraph, starts) -> frozenset[int]:
    """All vertices ``j`` with a path ``i ~> j`` from some ``i`` in ``starts``."""
    adj = g.adjacency_lists()
    seen = {s - 1 for s in starts}
    todo = list(seen)
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return frozenset(v + 1 for v in seen)


def reach_decomposition(
    g: Digraph, cond: Condensation | None = None, *, require_weak: bool = True
) -> ReachDecomposition:
    """Compute reaches, cabals, exclusive and common parts of ``g``.

    Reaches are ordered by the smallest vertex id of their cabal. With
    ``require_weak=False`` a disconnected graph is decomposed component by
    component instead of rejected.

    Raises
    ------
    NotWeaklyConnected
        If the underlying undirected graph has more than one component.
    """
    if require_weak:
        comps = weak_components(g)
        if len(comps) > 1:
            raise NotWeaklyConnected(comps)
    if cond is None:
        cond = strongly_connected_components(g)
    cabals = sorted((cond.sccs[a] for a in cond.sources()), key=min)
    reach_sets = [reachable_set(g, b) for b in cabals]
    reaches = []
    for m, (b, r) in enumerate(zip(cabals, reach_sets)):
        others = frozenset().union(*(reach_sets[j] for j in range(len(cabals)) if j != m))
        exclusive = r - others
        reaches.append(Reach(reach=r, cabal=b, exclusive=exclusive, common=r - exclusive))
    return ReachDecomposition(reaches=tuple(reaches), condensation=cond)
