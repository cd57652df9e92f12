"""Combinatorial, random-walk and generalized Laplacians ``E+ - E S``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import AdjacencyBundle, Digraph
from .taxonomy import Condensation

__all__ = [
    "LaplacianMatrix",
    "DiagonalBlock",
    "ViolatesDominance",
    "comb_laplacian",
    "rw_laplacian",
    "generalized_laplacian",
    "block_triangularize",
    "support_digraph",
    "STRICT_TOL",
]

STRICT_TOL = 1e-12


class ViolatesDominance(ValueError):
    """``eplus >= e >= 0`` fails for some vertex."""


@dataclass(frozen=True)
class LaplacianMatrix:
    """A matrix ``M = diag(eplus) - diag(e) @ S`` with ``S`` row (sub)stochastic.

    ``kind`` is ``"comb"``, ``"rw"`` or ``"generalized"``. ``vertices`` holds
    the 1-based ids of the rows, which matters for restricted blocks.
    """

    kind: str
    M: np.ndarray
    eplus: np.ndarray
    e: np.ndarray
    S: np.ndarray
    vertices: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.M.shape[0]

    @property
    def is_strict(self) -> bool:
        return bool(np.any(self.eplus - self.e > STRICT_TOL))

    @property
    def is_actual(self) -> bool:
        """An actual Laplacian: ``eplus == e`` and every row sums to zero."""
        return not self.is_strict

    def restrict(self, vertices) -> "LaplacianMatrix":
        """Principal submatrix on ``vertices`` as a generalized Laplacian.

        Rows of ``S`` that lose mass are renormalised and the lost fraction
        moves into ``e``; a row with no mass left gets ``e_i = 0``.
        """
        pos = {v: p for p, v in enumerate(self.vertices)}
        idx = [pos[v] for v in vertices]
        sub = self.S[np.ix_(idx, idx)]
        mass = sub.sum(axis=1)
        e = self.e[idx] * mass
        S = np.eye(len(idx))
        live = mass > 0
        S[live] = sub[live] / mass[live, None]
        M = self.M[np.ix_(idx, idx)].copy()
        return LaplacianMatrix(
            kind="generalized",
            M=M,
            eplus=self.eplus[idx].copy(),
            e=e,
            S=S,
            vertices=tuple(vertices),
        )


def _frozen(*arrays):
    for a in arrays:
        a.setflags(write=False)


def _assemble(kind, S, eplus, e, vertices):
    M = np.diag(eplus) - e[:, None] * S
    _frozen(M, eplus, e)
    return LaplacianMatrix(kind=kind, M=M, eplus=eplus, e=e, S=S, vertices=vertices)


def comb_laplacian(a: AdjacencyBundle) -> LaplacianMatrix:
    """``L^c = D - Q``."""
    D = np.array(a.D, dtype=float)
    # D - Q directly rather than D - D S, so integer weights stay exact.
    M = np.diag(D) - a.Q
    e = D.copy()
    _frozen(M, D, e)
    return LaplacianMatrix("comb", M, D, e, a.S, tuple(range(1, a.n + 1)))


def rw_laplacian(a: AdjacencyBundle) -> LaplacianMatrix:
    """``𝓛 = I - S``."""
    ones = np.ones(a.n)
    return _assemble("rw", a.S, ones, ones.copy(), tuple(range(1, a.n + 1)))


def generalized_laplacian(a: AdjacencyBundle, eplus, e) -> LaplacianMatrix:
    """``M = diag(eplus) - diag(e) S`` for diagonals with ``eplus >= e >= 0``."""
    eplus = np.array(eplus, dtype=float).reshape(-1)
    e = np.array(e, dtype=float).reshape(-1)
    if eplus.shape != (a.n,) or e.shape != (a.n,):
        raise ValueError(f"diagonals must have length {a.n}")
    if np.any(e < 0):
        bad = int(np.argmax(e < 0)) + 1
        raise ViolatesDominance(f"e_{bad} = {e[bad - 1]} is negative")
    if np.any(eplus < e):
        bad = int(np.argmax(eplus < e)) + 1
        raise ViolatesDominance(
            f"eplus_{bad} = {eplus[bad - 1]} < e_{bad} = {e[bad - 1]}"
        )
    return _assemble("generalized", a.S, eplus, e, tuple(range(1, a.n + 1)))


@dataclass(frozen=True)
class DiagonalBlock:
    vertices: tuple[int, ...]
    matrix: LaplacianMatrix

    @property
    def actual(self) -> bool:
        return self.matrix.is_actual


def block_triangularize(lap: LaplacianMatrix, cond: Condensation):
    """Reorder ``lap`` SCC by SCC so it becomes lower block triangular.

    Returns
    -------
    perm : list of int
        1-based vertex ids in their new order.
    permuted : ndarray
        ``P M P^T``.
    blocks : list of DiagonalBlock
        One per SCC, in topological order.
    """
    perm = cond.vertex_order()
    pos = {v: p for p, v in enumerate(lap.vertices)}
    idx = [pos[v] for v in perm]
    permuted = lap.M[np.ix_(idx, idx)]
    blocks = []
    for scc in cond.sccs:
        members = tuple(sorted(scc))
        blocks.append(DiagonalBlock(members, lap.restrict(members)))
    return perm, permuted, blocks


def support_digraph(M) -> Digraph:
    """Digraph read off the off-diagonal support of a Laplacian-like matrix.

    ``M_ij != 0`` for ``i != j`` becomes the edge ``j -> i`` with weight
    ``|M_ij|``. Works for ``S`` as well as for ``L``.
    """
    M = np.asarray(M)
    n = M.shape[0]
    rows, cols = np.nonzero(M)
    edges = {(int(j) + 1, int(i) + 1): float(abs(M[i, j])) for i, j in zip(rows, cols) if i != j}
    return Digraph(n, edges)
