"""Eigenvalues of small dense nonsymmetric matrices.

Householder reduction to upper Hessenberg form followed by the implicit
Francis double-shift QR iteration. Only eigenvalues are computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .laplacian import LaplacianMatrix

__all__ = [
    "Spectrum",
    "GersgorinReport",
    "NoConvergence",
    "hessenberg",
    "eigenvalues",
    "zero_multiplicity",
    "gersgorin_check",
    "matrix_rank",
    "geometric_multiplicity",
    "algebraic_multiplicity",
    "eigenvalue_clusters",
    "defective_eigenvalues",
]

_EPS = np.finfo(float).eps


class NoConvergence(ArithmeticError):
    """QR iteration hit its sweep cap.

    ``partial`` holds the eigenvalues that did deflate; they are not
    guaranteed to be accurate.
    """

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = np.asarray(partial, dtype=complex)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    reliable: bool = True
    sweeps: int = 0

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def real(self) -> np.ndarray:
        return self.eigenvalues.real

    @property
    def imag(self) -> np.ndarray:
        return self.eigenvalues.imag

    def zero_multiplicity(self, tol: float = 1e-7) -> int:
        return zero_multiplicity(self, tol)

    def as_pairs(self) -> list[dict]:
        return [{"re": float(z.real), "im": float(z.imag)} for z in self.eigenvalues]


def hessenberg(a) -> np.ndarray:
    """Upper Hessenberg matrix orthogonally similar to ``a``."""
    h = np.array(a, dtype=float, copy=True)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        v = x.copy()
        v[0] += math.copysign(alpha, x[0])
        v /= np.linalg.norm(v)
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v)
        h[k + 2 :, k] = 0.0
    return h


def _francis(h: np.ndarray, max_sweeps: int, deflate_tol: float):
    """Eigenvalues of an upper Hessenberg matrix; works on a padded copy.

    Indices below are 1-based to stay close to the textbook formulation.
    Returns ``(wr, wi, sweeps, done)``; on failure ``done`` is False and
    only the deflated tail of ``wr``/``wi`` is meaningful.
    """
    n = h.shape[0]
    a = np.zeros((n + 1, n + 1))
    a[1:, 1:] = h
    wr = np.zeros(n + 1)
    wi = np.zeros(n + 1)
    found = np.zeros(n + 1, dtype=bool)
    anorm = np.abs(h).sum()
    nn = n
    t = 0.0
    sweeps = 0
    while nn >= 1:
        its = 0
        while True:
            l = 1
            for ll in range(nn, 1, -1):
                s = abs(a[ll - 1, ll - 1]) + abs(a[ll, ll])
                if s == 0.0:
                    s = anorm
                if abs(a[ll, ll - 1]) <= _EPS * s or abs(a[ll, ll - 1]) <= deflate_tol:
                    a[ll, ll - 1] = 0.0
                    l = ll
                    break
            x = a[nn, nn]
            if l == nn:
                wr[nn], wi[nn] = x + t, 0.0
                found[nn] = True
                nn -= 1
                break
            y = a[nn - 1, nn - 1]
            w = a[nn, nn - 1] * a[nn - 1, nn]
            if l == nn - 1:
                p = 0.5 * (y - x)
                q = p * p + w
                z = math.sqrt(abs(q))
                x += t
                if q >= 0.0:
                    z = p + math.copysign(z, p)
                    wr[nn - 1] = wr[nn] = x + z
                    if z:
                        wr[nn] = x - w / z
                    wi[nn - 1] = wi[nn] = 0.0
                else:
                    wr[nn - 1] = wr[nn] = x + p
                    wi[nn - 1], wi[nn] = -z, z
                found[nn - 1] = found[nn] = True
                nn -= 2
                break
            if sweeps >= max_sweeps:
                return wr[1:], wi[1:], found[1:], sweeps, False
            if its and its % 10 == 0:
                # exceptional shift
                t += x
                for i in range(1, nn + 1):
                    a[i, i] -= x
                s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
                y = x = 0.75 * s
                w = -0.4375 * s * s
            its += 1
            sweeps += 1
            m = nn - 2
            while m >= l:
                z = a[m, m]
                r = x - z
                s = y - z
                p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
                q = a[m + 1, m + 1] - z - r - s
                r = a[m + 2, m + 1]
                s = abs(p) + abs(q) + abs(r)
                p, q, r = p / s, q / s, r / s
                if m == l:
                    break
                u = abs(a[m, m - 1]) * (abs(q) + abs(r))
                v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z) + abs(a[m + 1, m + 1]))
                if u <= _EPS * v:
                    break
                m -= 1
            for i in range(m + 2, nn + 1):
                a[i, i - 2] = 0.0
                if i != m + 2:
                    a[i, i - 3] = 0.0
            for k in range(m, nn):
                if k != m:
                    p = a[k, k - 1]
                    q = a[k + 1, k - 1]
                    r = a[k + 2, k - 1] if k != nn - 1 else 0.0
                    x = abs(p) + abs(q) + abs(r)
                    if x != 0.0:
                        p, q, r = p / x, q / x, r / x
                s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
                if s == 0.0:
                    continue
                if k == m:
                    if l != m:
                        a[k, k - 1] = -a[k, k - 1]
                else:
                    a[k, k - 1] = -s * x
                p += s
                x, y, z = p / s, q / s, r / s
                q, r = q / p, r / p
                # row transformation
                cols = slice(k, nn + 1)
                pv = a[k, cols] + q * a[k + 1, cols]
                if k != nn - 1:
                    pv = pv + r * a[k + 2, cols]
                    a[k + 2, cols] -= pv * z
                a[k + 1, cols] -= pv * y
                a[k, cols] -= pv * x
                # column transformation
                rows = slice(l, min(nn, k + 3) + 1)
                pc = x * a[rows, k] + y * a[rows, k + 1]
                if k != nn - 1:
                    pc = pc + z * a[rows, k + 2]
                    a[rows, k + 2] -= pc * r
                a[rows, k + 1] -= pc * q
                a[rows, k] -= pc
            if l >= nn - 1:
                break
    return wr[1:], wi[1:], found[1:], sweeps, True


def _ordered(values: np.ndarray) -> np.ndarray:
    keys = np.lexsort((np.round(values.imag, 12), np.round(values.real, 12)))
    return values[keys]


def eigenvalues(m, max_sweeps: int | None = None) -> Spectrum:
    """All eigenvalues of a real square matrix.

    Eigenvalues come back sorted by real part, then imaginary part.

    Raises
    ------
    NoConvergence
        If the QR sweeps exceed ``max_sweeps`` (default ``100 * n``).
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return Spectrum(np.zeros(0, dtype=complex))
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if max_sweeps is None:
        max_sweeps = 100 * n
    norm = np.abs(a).sum(axis=1).max()
    wr, wi, found, sweeps, done = _francis(hessenberg(a), max_sweeps, 1e-14 * norm)
    values = wr + 1j * wi
    if not done:
        raise NoConvergence(
            f"QR iteration did not converge within {max_sweeps} sweeps",
            _ordered(values[found]),
        )
    return Spectrum(_ordered(values), reliable=True, sweeps=sweeps)


def zero_multiplicity(s: Spectrum, tol: float = 1e-7) -> int:
    """Number of eigenvalues with modulus below ``tol``."""
    return int(np.sum(np.abs(s.eigenvalues) < tol))


@dataclass(frozen=True)
class GersgorinReport:
    """Discs ``|z - centers[i]| <= radii[i]`` with ``centers = eplus`` and ``radii = e``."""

    centers: np.ndarray
    radii: np.ndarray
    contained: bool
    violations: list = field(default_factory=list)


def gersgorin_check(lap: LaplacianMatrix, s: Spectrum, tol: float = 1e-8) -> GersgorinReport:
    """Check that every eigenvalue lies in some disc ``B_{e_i}(e+_i)``.

    Violations are listed, never raised.
    """
    centers = np.asarray(lap.eplus, dtype=float)
    radii = np.asarray(lap.e, dtype=float)
    bad = []
    for z in s.eigenvalues:
        gap = np.abs(z - centers) - radii
        if not np.any(gap <= tol):
            bad.append(complex(z))
    return GersgorinReport(centers=centers, radii=radii, contained=not bad, violations=bad)


def matrix_rank(m, rtol: float = 1e-9) -> int:
    """Rank by column-pivoted QR, counting ``|R_ii| > rtol * ||m||_inf``."""
    a = np.asarray(m)
    if a.size == 0:
        return 0
    scale = np.abs(a).sum(axis=1).max()
    if scale == 0.0:
        return 0
    r = scipy.linalg.qr(a, mode="r", pivoting=True)[0]
    return int(np.sum(np.abs(np.diag(r)) > rtol * scale))


def geometric_multiplicity(m, lam: complex = 0.0, rtol: float = 1e-9) -> int:
    """Dimension of the eigenspace of ``lam``: ``n - rank(m - lam I)``."""
    a = np.asarray(m)
    shifted = a - lam * np.eye(a.shape[0]) if lam != 0 else a
    return a.shape[0] - matrix_rank(shifted, rtol)


def algebraic_multiplicity(s: Spectrum, lam: complex, tol: float = 1e-7) -> int:
    return int(np.sum(np.abs(s.eigenvalues - lam) < tol))


def eigenvalue_clusters(s: Spectrum, tol: float = 1e-7):
    """Group eigenvalues closer than ``tol`` (single linkage).

    Returns a list of ``(mean, count)``.
    """
    vals = list(s.eigenvalues)
    groups: list[list[complex]] = []
    for z in vals:
        hits = [g for g in groups if any(abs(z - w) < tol for w in g)]
        merged = [z]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return [(complex(np.mean(g)), len(g)) for g in groups]


def defective_eigenvalues(m, s: Spectrum | None = None, tol: float = 1e-6, rtol: float = 1e-9):
    """Eigenvalues whose geometric multiplicity is below the algebraic one.

    A defective eigenvalue splits into a cluster of width about
    ``sqrt(eps)`` under rounding, hence the looser default ``tol``.

    Returns a list of ``(eigenvalue, algebraic, geometric)``.
    """
    if s is None:
        s = eigenvalues(m)
    out = []
    for lam, alg in eigenvalue_clusters(s, tol):
        if alg < 2:
            continue
        if abs(lam.imag) < tol:
            lam = complex(lam.real, 0.0)
        geo = geometric_multiplicity(np.asarray(m, dtype=complex if lam.imag else float), lam if lam.imag else lam.real, rtol)
        if geo < alg:
            out.append((lam, alg, geo))
    return out
