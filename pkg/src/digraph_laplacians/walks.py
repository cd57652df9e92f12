"""Monte Carlo random walks, the sampling counterpart of ``dynamics``.

A walker at vertex ``i`` steps to ``j`` with probability ``S_ij``, i.e. it
moves from a vertex to one of the vertices it sees, tracing information
back to its source. Every walk eventually lands in a cabal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .taxonomy import ReachDecomposition

__all__ = ["WalkSample", "sample_walks"]


@dataclass(frozen=True)
class WalkSample:
    """Outcome of ``walks`` independent walks from ``start``.

    ``cabal_index[w]`` is the 0-based reach whose cabal walk ``w`` hit and
    ``steps[w]`` how many steps it took.
    """

    start: int
    seed: int
    cabal_index: np.ndarray
    steps: np.ndarray

    @property
    def walks(self) -> int:
        return len(self.steps)

    def absorption_frequencies(self, k: int) -> np.ndarray:
        return np.bincount(self.cabal_index, minlength=k) / self.walks

    def mean_hitting_time(self) -> float:
        return float(self.steps.mean())


def sample_walks(
    S,
    rd: ReachDecomposition,
    start: int,
    walks: int = 100_000,
    seed: int = 0,
    max_steps: int = 1_000_000,
) -> WalkSample:
    """Run ``walks`` walkers from vertex ``start`` until each hits a cabal.

    Walkers advance in lock step, so the cost is one vectorised draw per
    step for the walkers still travelling.
    """
    S = np.asarray(S, dtype=float)
    n = S.shape[0]
    if not 1 <= start <= n:
        raise ValueError(f"start vertex {start} out of range 1..{n}")
    label = np.full(n, -1)
    for m, reach in enumerate(rd):
        for v in reach.cabal:
            label[v - 1] = m
    cum = np.cumsum(S, axis=1)
    cum[:, -1] = 1.0

    rng = np.random.default_rng(seed)
    pos = np.full(walks, start - 1)
    steps = np.zeros(walks, dtype=np.int64)
    active = np.flatnonzero(label[pos] < 0)
    t = 0
    while active.size:
        if t >= max_steps:
            raise RuntimeError(f"{active.size} walks still running after {max_steps} steps")
        u = rng.random(active.size)
        rows = cum[pos[active]]
        pos[active] = (rows < u[:, None]).sum(axis=1)
        t += 1
        steps[active] = t
        active = active[label[pos[active]] < 0]
    return WalkSample(start=start, seed=seed, cabal_index=label[pos], steps=steps)
