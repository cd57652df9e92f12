"""Independent reference computations used only by the tests.

None of these share code paths with the package: reachability is brute
force, characteristic polynomials are exact rational arithmetic, and the
matrix exponential is a high-precision power series.
"""

from fractions import Fraction
from itertools import product

import mpmath
import numpy as np


def transitive_closure(n, edges):
    """reach[i][j] is True iff there is a path i ~> j of length >= 0 (1-based)."""
    reach = [[i == j for j in range(n + 1)] for i in range(n + 1)]
    for u, v in edges:
        reach[u][v] = True
    for k, i, j in product(range(1, n + 1), repeat=3):
        if reach[i][k] and reach[k][j]:
            reach[i][j] = True
    return reach


def brute_sccs(n, edges):
    reach = transitive_closure(n, edges)
    out = []
    for v in range(1, n + 1):
        cls = frozenset(w for w in range(1, n + 1) if reach[v][w] and reach[w][v])
        if cls not in out:
            out.append(cls)
    return out


def brute_reaches(n, edges):
    """Maximal reachable sets R(i), each paired with the vertices that generate it."""
    reach = transitive_closure(n, edges)
    sets = {v: frozenset(w for w in range(1, n + 1) if reach[v][w]) for v in range(1, n + 1)}
    maximal = {s for s in sets.values() if not any(s < t for t in sets.values())}
    out = []
    for s in maximal:
        cabal = frozenset(v for v in range(1, n + 1) if sets[v] == s)
        out.append((s, cabal))
    return sorted(out, key=lambda rc: min(rc[1]))


def unilateral(vertices, reach):
    return all(reach[a][b] or reach[b][a] for a in vertices for b in vertices)


def maximal_unilateral_sets(n, edges):
    reach = transitive_closure(n, edges)
    good = []
    for mask in range(1, 1 << n):
        vs = [v + 1 for v in range(n) if mask >> v & 1]
        if unilateral(vs, reach):
            good.append(frozenset(vs))
    return [s for s in good if not any(s < t for t in good)]


def char_poly(M):
    """Exact characteristic polynomial coefficients (highest degree first).

    Faddeev-LeVerrier over the rationals; entries must be exactly
    representable as fractions.
    """
    A = [[Fraction(x).limit_denominator(10**9) for x in row] for row in np.asarray(M, dtype=float)]
    n = len(A)
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = A @ M_{k-1} + c_{k-1} I
        prev = Mk
        Mk = [[sum(A[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            Mk[i][i] += coeffs[-1]
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(AM[i][i] for i in range(n)) / k)
    return coeffs


def char_poly_roots(M, dps=50):
    coeffs = char_poly(M)
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in coeffs],
                                 maxsteps=500, extraprec=400)
        return np.array([complex(r) for r in roots])


def expm_series(M, t=1.0, dps=40):
    """exp(-M t) from the power series evaluated in high precision."""
    with mpmath.workdps(dps):
        A = -mpmath.matrix(np.asarray(M, dtype=float).tolist()) * t
        return np.array(mpmath.expm(A, method="taylor").tolist(), dtype=float)


def match_multisets(a, b):
    """Largest distance after greedily pairing each value of ``a`` with ``b``."""
    b = list(b)
    worst = 0.0
    for z in a:
        j = int(np.argmin([abs(z - w) for w in b]))
        worst = max(worst, abs(z - b.pop(j)))
    return worst
