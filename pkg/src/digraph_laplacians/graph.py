"""Weighted digraphs and the matrices Q, D and S built from them.

Orientation: an edge ``j -> i`` means information flows from ``j`` to ``i``
(``i`` sees ``j``), and it is stored in row ``i``, column ``j`` of ``Q``.
Vertex ids are 1-based everywhere in the public API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "Digraph",
    "AdjacencyBundle",
    "ParseError",
    "parse_digraph",
    "read_digraph",
    "build_adjacency",
    "reverse",
]


class ParseError(ValueError):
    """Malformed edge-list document. ``lineno`` is 1-based (0 if unknown)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class Digraph:
    """A directed graph on vertices ``1..n`` with positive edge weights.

    ``edges`` maps ``(tail, head)`` to the weight of ``tail -> head``.
    Self-loops are ordinary edges.
    """

    n: int
    edges: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        for (u, v), w in self.edges.items():
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{self.n}")
            if not w > 0:
                raise ValueError(f"edge ({u}, {v}) has non-positive weight {w!r}")

    @classmethod
    def from_edges(cls, n, edges):
        """Build from an iterable of ``(tail, head)`` or ``(tail, head, weight)``."""
        table = {}
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = float(e[2]) if len(e) > 2 else 1.0
            if (u, v) in table:
                raise ValueError(f"duplicate edge ({u}, {v})")
            table[(u, v)] = w
        return cls(int(n), table)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def successors(self, u: int) -> list[int]:
        return sorted(v for (t, v) in self.edges if t == u)

    def predecessors(self, v: int) -> list[int]:
        """In-neighbourhood of ``v``: every ``j`` with an edge ``j -> v``."""
        return sorted(t for (t, h) in self.edges if h == v)

    def adjacency_lists(self) -> list[list[int]]:
        """0-based successor lists, used by the graph algorithms."""
        out = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            out[u - 1].append(v - 1)
        return out

    def is_undirected(self, rtol: float = 0.0) -> bool:
        """True when every edge is paired with its reverse at equal weight."""
        for (u, v), w in self.edges.items():
            w2 = self.edges.get((v, u))
            if w2 is None or abs(w2 - w) > rtol * max(abs(w), abs(w2)):
                return False
        return True


@dataclass(frozen=True)
class AdjacencyBundle:
    """The adjacency matrix ``Q``, in-degrees ``D`` and ``S = D^{-1} Q``.

    ``loop_added`` lists the vertices (1-based) that had no incoming edge
    and received the unit convention loop ``Q_ii = 1``.
    """

    Q: np.ndarray
    D: np.ndarray
    S: np.ndarray
    loop_added: frozenset[int]

    @property
    def n(self) -> int:
        return self.Q.shape[0]


def parse_digraph(text: str) -> Digraph:
    """Parse an edge-list document.

    The first non-comment line holds the vertex count; every following
    non-empty line is ``tail head [weight]``. ``#`` starts a comment.

    >>> g = parse_digraph("3\\n1 2 2.5\\n2 3 0.5")
    >>> g.n, g.edges[(1, 2)], g.edges[(2, 3)]
    (3, 2.5, 0.5)
    """
    n = None
    edges: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 1:
                raise ParseError("expected the vertex count on its own line", lineno)
            try:
                n = int(tokens[0])
            except ValueError:
                raise ParseError(f"invalid vertex count {tokens[0]!r}", lineno) from None
            if n < 1:
                raise ParseError(f"vertex count must be positive, got {n}", lineno)
            continue
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 'tail head [weight]', got {line!r}", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"invalid vertex id in {line!r}", lineno) from None
        try:
            w = float(tokens[2]) if len(tokens) == 3 else 1.0
        except ValueError:
            raise ParseError(f"invalid weight {tokens[2]!r}", lineno) from None
        for vid in (u, v):
            if not 1 <= vid <= n:
                raise ParseError(f"vertex id {vid} out of range 1..{n}", lineno)
        if not (w > 0 and np.isfinite(w)):
            raise ParseError(f"weight must be positive and finite, got {tokens[2]}", lineno)
        if (u, v) in edges:
            raise ParseError(f"duplicate edge {u} -> {v}", lineno)
        edges[(u, v)] = w
    if n is None:
        raise ParseError("document has no vertex count")
    return Digraph(n, edges)


def read_digraph(path) -> Digraph:
    return parse_digraph(Path(path).read_text(encoding="utf-8"))


def build_adjacency(g: Digraph) -> AdjacencyBundle:
    """Assemble ``Q``, ``D`` and ``S`` for ``g``.

    Vertices without incoming edges get ``Q_ii = 1`` so that ``D`` is
    invertible. An input self-loop counts as an incoming edge.
    """
    n = g.n
    Q = np.zeros((n, n))
    for (u, v), w in g.edges.items():
        Q[v - 1, u - 1] = w
    loops = set()
    for i in range(n):
        if not Q[i].any():
            Q[i, i] = 1.0
            loops.add(i + 1)
    D = Q.sum(axis=1)
    S = Q / D[:, None]
    for arr in (Q, D, S):
        arr.setflags(write=False)
    return AdjacencyBundle(Q=Q, D=D, S=S, loop_added=frozenset(loops))


def reverse(g: Digraph) -> Digraph:
    """The same graph with every orientation flipped."""
    return Digraph(g.n, {(v, u): w for (u, v), w in g.edges.items()})
