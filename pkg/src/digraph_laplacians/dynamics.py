"""Consensus and diffusion dynamics, continuous and discrete.

Consensus evolves a column vector, ``x' = -L x``; diffusion evolves a row
vector, ``p' = -p L``. Both converge to the projections ``Gamma x0`` and
``p0 Gamma``. In discrete time ``x(l+1) = S x(l)`` may be periodic, so the
Cesaro average is what converges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .laplacian import LaplacianMatrix, support_digraph
from .kernels import KernelBasis, asymptotics_matrix
from .taxonomy import ReachDecomposition, reachable_set

__all__ = [
    "TrajectoryRecord",
    "HittingTimeSolution",
    "StepUnderflow",
    "StochasticityViolation",
    "SingularSystem",
    "KahanSum",
    "matrix_exponential",
    "rk4_step_size",
    "simulate_continuous",
    "simulate_discrete",
    "cesaro_matrix",
    "time_one_map",
    "absorption_probabilities",
    "hitting_times",
]

DYNAMICS = ("consensus", "diffusion")


class StepUnderflow(ArithmeticError):
    pass


class StochasticityViolation(ArithmeticError):
    """The computed time-one map is not row stochastic with closed support."""


class SingularSystem(ArithmeticError):
    pass


class KahanSum:
    """Compensated running sum of equally shaped arrays."""

    def __init__(self, shape):
        self.total = np.zeros(shape)
        self._c = np.zeros(shape)

    def add(self, x):
        y = x - self._c
        t = self.total + y
        self._c = (t - self.total) - y
        self.total = t


@dataclass(frozen=True)
class TrajectoryRecord:
    """Sampled states of one run.

    ``mode`` is ``"<consensus|diffusion>-<continuous|discrete>"``. ``states``
    has one row per entry of ``times``. For discrete runs ``cesaro[i]`` is
    the average of the first ``times[i]`` iterates (``x(0)`` at time 0).
    """

    mode: str
    times: np.ndarray
    states: np.ndarray
    predicted_limit: np.ndarray
    cesaro: np.ndarray | None = None
    step: float | None = None

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    @property
    def final_deviation(self) -> float:
        """``||final state - predicted limit||_inf`` (Cesaro average for discrete runs)."""
        last = self.cesaro[-1] if self.cesaro is not None else self.states[-1]
        return float(np.abs(last - self.predicted_limit).max())


@dataclass(frozen=True)
class HittingTimeSolution:
    tau: np.ndarray
    B: frozenset[int]


def _inf_norm(m) -> float:
    m = np.asarray(m)
    return float(np.abs(m).sum(axis=1).max()) if m.size else 0.0


def matrix_exponential(m, t: float = 1.0) -> np.ndarray:
    """``exp(-m t)`` by scaling and squaring around a degree-6 Taylor core.

    The argument is scaled by ``2**-s`` with at least
    ``s = ceil(log2(||m||_inf t)) + 3`` so that its norm is at most 1/8.
    Squaring ``2**s`` times multiplies the Taylor remainder
    ``theta**7 / 7!`` by ``2**s``, so ``s`` is raised further until
    ``||A|| theta**6 / 7!`` is below unit roundoff.
    """
    A = -np.asarray(m, dtype=float) * t
    n = A.shape[0]
    norm = _inf_norm(A)
    if norm == 0.0:
        return np.eye(n)
    s = max(0, math.ceil(math.log2(norm)) + 3)
    theta = (5040.0 * 2.0**-53 / norm) ** (1.0 / 6.0)
    s = max(s, math.ceil(math.log2(norm / theta)))
    X = A / 2.0**s
    E = np.eye(n)
    # Horner form of sum_{k<=6} X^k / k!
    for k in range(6, 0, -1):
        E = np.eye(n) + X @ E / k
    for _ in range(s):
        E = E @ E
    return E


def rk4_step_size(lap_matrix) -> float:
    """``min(0.01, 0.1 / ||L||_inf)``; keeps ``h ||L||`` at or below 0.1."""
    norm = _inf_norm(lap_matrix)
    return 0.01 if norm == 0.0 else min(0.01, 0.1 / norm)


def simulate_continuous(
    lap: LaplacianMatrix,
    init,
    horizon: float,
    samples: int = 100,
    mode: str = "consensus",
    gamma: np.ndarray | None = None,
) -> TrajectoryRecord:
    """Integrate consensus or diffusion with fixed-step classical RK4.

    ``samples`` is the number of equal intervals in ``[0, horizon]``; the
    record holds ``samples + 1`` states including both end points.
    ``gamma`` may be passed to skip recomputing the asymptotics matrix.
    """
    if mode not in DYNAMICS:
        raise ValueError(f"mode must be one of {DYNAMICS}, got {mode!r}")
    if not horizon > 0:
        raise ValueError("horizon must be positive")
    if samples < 1:
        raise ValueError("samples must be a positive integer")
    L = np.asarray(lap.M, dtype=float)
    y = np.array(init, dtype=float).reshape(-1)
    if y.shape != (L.shape[0],):
        raise ValueError(f"initial state has length {y.size}, expected {L.shape[0]}")

    h_max = rk4_step_size(L)
    if h_max < 1e-12:
        raise StepUnderflow(f"required RK4 step {h_max:.3g} is below 1e-12")
    dt = horizon / samples
    per = max(1, math.ceil(dt / h_max - 1e-9))
    h = dt / per

    if mode == "consensus":
        def f(v):
            return -(L @ v)
    else:
        def f(v):
            return -(v @ L)

    states = np.empty((samples + 1, y.size))
    states[0] = y
    for i in range(1, samples + 1):
        for _ in range(per):
            k1 = f(y)
            k2 = f(y + 0.5 * h * k1)
            k3 = f(y + 0.5 * h * k2)
            k4 = f(y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states[i] = y

    G = asymptotics_matrix(lap) if gamma is None else np.asarray(gamma)
    x0 = states[0]
    limit = G @ x0 if mode == "consensus" else x0 @ G
    return TrajectoryRecord(
        mode=f"{mode}-continuous",
        times=np.linspace(0.0, horizon, samples + 1),
        states=states,
        predicted_limit=limit,
        step=h,
    )


def _rw_gamma(S) -> np.ndarray:
    S = np.asarray(S, dtype=float)
    n = S.shape[0]
    ones = np.ones(n)
    lap = LaplacianMatrix("rw", np.eye(n) - S, ones, ones, S, tuple(range(1, n + 1)))
    return asymptotics_matrix(lap)


def simulate_discrete(
    S,
    init,
    steps: int,
    mode: str = "consensus",
    stride: int = 1,
    gamma: np.ndarray | None = None,
) -> TrajectoryRecord:
    """Iterate ``x <- S x`` (consensus) or ``p <- p S`` (diffusion).

    Every ``stride``-th iterate is recorded, plus the last one, together
    with the running Cesaro average.
    """
    if mode not in DYNAMICS:
        raise ValueError(f"mode must be one of {DYNAMICS}, got {mode!r}")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if stride < 1:
        raise ValueError("stride must be at least 1")
    S = np.asarray(S, dtype=float)
    y = np.array(init, dtype=float).reshape(-1)
    if y.shape != (S.shape[0],):
        raise ValueError(f"initial state has length {y.size}, expected {S.shape[0]}")
    x0 = y.copy()

    acc = KahanSum(y.shape)
    times, states, averages = [0], [y.copy()], [y.copy()]
    for ell in range(1, steps + 1):
        acc.add(y)
        y = S @ y if mode == "consensus" else y @ S
        if ell % stride == 0 or ell == steps:
            times.append(ell)
            states.append(y.copy())
            averages.append(acc.total / ell)

    G = _rw_gamma(S) if gamma is None else np.asarray(gamma)
    limit = G @ x0 if mode == "consensus" else x0 @ G
    return TrajectoryRecord(
        mode=f"{mode}-discrete",
        times=np.array(times),
        states=np.array(states),
        predicted_limit=limit,
        cesaro=np.array(averages),
    )


def cesaro_matrix(S, steps: int) -> np.ndarray:
    """``(1/l) sum_{j<l} S^j`` by running accumulation of powers."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    S = np.asarray(S, dtype=float)
    P = np.eye(S.shape[0])
    acc = KahanSum(S.shape)
    for _ in range(steps):
        acc.add(P)
        P = P @ S
    return acc.total / steps


def time_one_map(lap: LaplacianMatrix, support_tol: float = 1e-12) -> np.ndarray:
    """``exp(-𝓛)`` for a random-walk Laplacian, with its stochasticity verified.

    Checks that rows sum to 1 within 1e-10, that entries are at least
    ``-1e-12``, and that ``(S^d)_ij > support_tol`` whenever ``i`` sees
    ``j`` through some path of the graph.

    Raises
    ------
    StochasticityViolation
    """
    if lap.kind != "rw":
        raise ValueError(f"time-one map needs an rw Laplacian, got kind {lap.kind!r}")
    Sd = matrix_exponential(lap.M, 1.0)
    rows = np.abs(Sd.sum(axis=1) - 1.0).max()
    if rows > 1e-10:
        raise StochasticityViolation(f"row sums deviate from 1 by {rows:.3g}")
    if Sd.min() < -1e-12:
        raise StochasticityViolation(f"negative entry {Sd.min():.3g}")
    g = support_digraph(lap.M)
    for j in range(1, g.n + 1):
        for i in reachable_set(g, [j]):
            if i != j and Sd[i - 1, j - 1] <= support_tol:
                raise StochasticityViolation(
                    f"path {j} ~> {i} exists but entry ({i}, {j}) is {Sd[i - 1, j - 1]:.3g}"
                )
    return Sd


def absorption_probabilities(kb: KernelBasis, j: int) -> np.ndarray:
    """Probabilities ``(gamma_1j, ..., gamma_kj)`` that a walker from ``j`` ends in each cabal."""
    if not 1 <= j <= kb.H0.shape[0]:
        raise ValueError(f"vertex {j} out of range")
    return np.array(kb.H0[j - 1], dtype=float)


def hitting_times(lap: LaplacianMatrix, rd: ReachDecomposition) -> HittingTimeSolution:
    """Expected steps to reach the union of cabals: ``𝓛 tau = 1`` off ``B``, ``tau = 0`` on ``B``."""
    if lap.kind != "rw":
        raise ValueError(f"hitting times need an rw Laplacian, got kind {lap.kind!r}")
    B = rd.cabal_union
    pos = {v: p for p, v in enumerate(lap.vertices)}
    rest = [pos[v] for v in lap.vertices if v not in B]
    tau = np.zeros(lap.n)
    if rest:
        A = lap.M[np.ix_(rest, rest)]
        try:
            lu = scipy.linalg.lu_factor(A)
        except (ValueError, np.linalg.LinAlgError) as exc:
            raise SingularSystem(str(exc)) from exc
        if np.any(np.diag(lu[0]) == 0.0):
            raise SingularSystem("hitting-time system is singular")
        sol = scipy.linalg.lu_solve(lu, np.ones(len(rest)))
        if not np.all(np.isfinite(sol)) or np.abs(A @ sol - 1.0).max() > 1e-9:
            raise SingularSystem("hitting-time solve is inaccurate")
        tau[rest] = sol
    return HittingTimeSolution(tau=tau, B=B)
