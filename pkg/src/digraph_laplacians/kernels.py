"""Right and left kernel bases of a Laplacian and the asymptotics matrix Gamma.

For reach ``m`` the right kernel vector ``gamma_m`` is 1 on the exclusive
part, 0 outside the reach and strictly between on the common part. The
left kernel vector ``gamma_bar_m`` is a probability vector supported on
the cabal. ``Gamma = sum_m gamma_m (x) gamma_bar_m`` is the limit of
``exp(-L t)`` and of the Cesaro averages of ``S^j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .laplacian import LaplacianMatrix, support_digraph
from .taxonomy import ReachDecomposition, reach_decomposition

__all__ = [
    "KernelBasis",
    "SingularCommonBlock",
    "PerronIterationDiverged",
    "right_kernel",
    "left_kernel",
    "left_perron_vector",
    "kernel_basis",
    "gamma_matrix",
    "classify_entries",
    "asymptotics_matrix",
]


class SingularCommonBlock(ArithmeticError):
    """``L_CC`` could not be inverted; the inputs are inconsistent."""


class PerronIterationDiverged(ArithmeticError):
    """Neither power iteration nor the bordered solve produced a Perron vector."""


@dataclass(frozen=True)
class KernelBasis:
    """``H0`` is n x k (columns gamma_m), ``H0bar`` is k x n (rows gamma_bar_m)."""

    H0: np.ndarray
    H0bar: np.ndarray

    @property
    def k(self) -> int:
        return self.H0.shape[1]

    @property
    def gamma(self) -> list[np.ndarray]:
        return [self.H0[:, m] for m in range(self.k)]

    @property
    def gamma_bar(self) -> list[np.ndarray]:
        return [self.H0bar[m] for m in range(self.k)]


def _index(lap: LaplacianMatrix):
    return {v: p for p, v in enumerate(lap.vertices)}


def right_kernel(lap: LaplacianMatrix, rd: ReachDecomposition, residual_tol: float = 1e-9) -> np.ndarray:
    """Columns ``gamma_1 .. gamma_k`` of the right kernel, as an n x k array.

    For each reach, fix 1 on ``H``, 0 off ``R`` and solve
    ``L_CC x = -L_CH 1`` for the common part by pivoted LU.
    """
    pos = _index(lap)
    n = lap.n
    out = np.zeros((n, rd.k))
    for m, reach in enumerate(rd):
        h = [pos[v] for v in sorted(reach.exclusive)]
        c = [pos[v] for v in sorted(reach.common)]
        out[h, m] = 1.0
        if not c:
            continue
        Lcc = lap.M[np.ix_(c, c)]
        rhs = -lap.M[np.ix_(c, h)].sum(axis=1)
        try:
            lu = scipy.linalg.lu_factor(Lcc, check_finite=True)
        except (ValueError, np.linalg.LinAlgError) as exc:
            raise SingularCommonBlock(str(exc)) from exc
        if np.any(np.diag(lu[0]) == 0.0):
            raise SingularCommonBlock(f"L_CC is singular for reach {m + 1}")
        x = scipy.linalg.lu_solve(lu, rhs)
        resid = np.abs(Lcc @ x - rhs).max()
        if not np.isfinite(resid) or resid >= residual_tol:
            raise SingularCommonBlock(
                f"L_CC solve for reach {m + 1} left residual {resid:.3g}"
            )
        out[c, m] = x
    return out


def left_perron_vector(P, tol: float = 1e-13, max_iter: int = 100_000) -> np.ndarray:
    """Probability row vector ``v`` with ``v P = v`` for irreducible stochastic ``P``.

    Power iteration first. Periodic blocks make power iteration cycle, so
    on non-convergence the bordered system ``[(I - P)^T; 1^T] v = [0; 1]``
    is solved instead, which is valid because eigenvalue 1 is simple.
    """
    P = np.asarray(P, dtype=float)
    b = P.shape[0]
    if b == 1:
        return np.ones(1)
    v = np.full(b, 1.0 / b)
    checkpoint = np.inf
    for it in range(1, max_iter + 1):
        nxt = v @ P
        nxt /= nxt.sum()
        diff = np.abs(nxt - v).max()
        v = nxt
        if diff < tol:
            return v
        if it % 1000 == 0:
            # periodic blocks cycle forever; stop once progress stalls
            if diff > 0.5 * checkpoint:
                break
            checkpoint = diff
    return _bordered_stationary(P)


def _bordered_stationary(P: np.ndarray) -> np.ndarray:
    # (I - P)^T has rank b - 1; swapping its last row for 1^T makes it regular.
    b = P.shape[0]
    A = (np.eye(b) - P).T
    A[-1] = 1.0
    rhs = np.zeros(b)
    rhs[-1] = 1.0
    try:
        v = scipy.linalg.lu_solve(scipy.linalg.lu_factor(A), rhs)
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise PerronIterationDiverged(str(exc)) from exc
    if not np.all(np.isfinite(v)) or np.any(v < -1e-12) or np.abs(v @ P - v).max() > 1e-9:
        raise PerronIterationDiverged(f"no stationary vector found for a {b}x{b} block")
    v = np.clip(v, 0.0, None)
    return v / v.sum()


def left_kernel(lap: LaplacianMatrix, rd: ReachDecomposition, tol: float = 1e-13, max_iter: int = 100_000) -> np.ndarray:
    """Rows ``gamma_bar_1 .. gamma_bar_k`` of the left kernel, as a k x n array.

    On cabal ``B`` the row solves ``gamma_bar_B L_BB = 0``. With
    ``L = E (I - S)``, ``v = gamma_bar_B E`` is the left Perron vector of
    ``S_BB``; so ``gamma_bar_B`` is ``v E^{-1}`` renormalised to sum 1.
    """
    pos = _index(lap)
    out = np.zeros((rd.k, lap.n))
    for m, reach in enumerate(rd):
        b = [pos[v] for v in sorted(reach.cabal)]
        e = lap.e[b]
        if np.any(e <= 0):
            raise ValueError(f"cabal {sorted(reach.cabal)} has a zero weight e_i")
        v = left_perron_vector(lap.S[np.ix_(b, b)], tol, max_iter)
        g = v / e
        out[m, b] = g / g.sum()
    return out


def kernel_basis(lap: LaplacianMatrix, rd: ReachDecomposition) -> KernelBasis:
    if not lap.is_actual:
        raise ValueError("kernel bases are defined for actual Laplacians only")
    H0 = right_kernel(lap, rd)
    H0bar = left_kernel(lap, rd)
    H0.setflags(write=False)
    H0bar.setflags(write=False)
    return KernelBasis(H0=H0, H0bar=H0bar)


def gamma_matrix(kb: KernelBasis) -> np.ndarray:
    """``Gamma = H0 @ H0bar``, i.e. the sum of outer products ``gamma_m gamma_bar_m``."""
    G = kb.H0 @ kb.H0bar
    G.setflags(write=False)
    return G


def asymptotics_matrix(lap: LaplacianMatrix) -> np.ndarray:
    """``Gamma`` for an actual Laplacian, with the taxonomy read off its support."""
    rd = reach_decomposition(support_digraph(lap.M), require_weak=False)
    return gamma_matrix(kernel_basis(lap, rd))


def classify_entries(gamma: np.ndarray, tol: float = 1e-9) -> list[str]:
    """Label each entry ``"one"``, ``"zero"`` or ``"between"`` (0 < x < 1)."""
    out = []
    for x in gamma:
        if abs(x - 1.0) <= tol:
            out.append("one")
        elif abs(x) <= tol:
            out.append("zero")
        elif 0.0 < x < 1.0:
            out.append("between")
        else:
            out.append("outside")
    return out
