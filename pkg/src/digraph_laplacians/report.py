"""Serialisation: 17-digit JSON, CSV matrices and trajectories, SVG spectra."""

from __future__ import annotations

import io
import json
import math

import numpy as np

from .graph import Digraph, build_adjacency
from .kernels import gamma_matrix, kernel_basis
from .laplacian import comb_laplacian, rw_laplacian
from .spectrum import eigenvalues, gersgorin_check
from .taxonomy import connectivity_class, reach_decomposition

__all__ = [
    "dumps",
    "matrix_to_csv",
    "trajectory_to_csv",
    "trajectory_to_dict",
    "spectrum_svg",
    "analysis_report",
    "LAPLACIANS",
]

LAPLACIANS = {"comb": comb_laplacian, "rw": rw_laplacian}


def _num(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        return "0"  # folds -0.0 as well
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return format(x, ".17g")


def _encode(obj, indent, level, out):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        out.append(json.dumps(bool(obj) if obj is not None else None))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_num(obj))
    elif isinstance(obj, (complex, np.complexfloating)):
        _encode({"re": obj.real, "im": obj.imag}, indent, level, out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(key)) + ": ")
            _encode(value, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
        if not items:
            out.append("[]")
            return
        flat = all(not isinstance(v, (dict, list, tuple, np.ndarray, set, frozenset, complex)) for v in items)
        if flat:
            parts = []
            for v in items:
                sub = []
                _encode(v, indent, level + 1, sub)
                parts.append("".join(sub))
            out.append("[" + ", ".join(parts) + "]")
            return
        out.append("[\n")
        for i, value in enumerate(items):
            out.append(pad)
            _encode(value, indent, level + 1, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with every float written at 17 significant digits.

    Non-finite floats become ``null``; complex numbers become ``{re, im}``.
    """
    out: list[str] = []
    _encode(obj, indent, 0, out)
    return "".join(out) + "\n"


def matrix_to_csv(m) -> str:
    """Row-major CSV, one matrix row per line, 17 significant digits."""
    m = np.atleast_2d(np.asarray(m, dtype=float))
    return "".join(",".join(_num(x) for x in row) + "\n" for row in m)


def trajectory_to_csv(rec) -> str:
    n = rec.states.shape[1]
    header = ["time"] + [f"x_{i}" for i in range(1, n + 1)]
    if rec.cesaro is not None:
        header += [f"cesaro_{i}" for i in range(1, n + 1)]
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for i, t in enumerate(rec.times):
        row = [t] + list(rec.states[i])
        if rec.cesaro is not None:
            row += list(rec.cesaro[i])
        buf.write(",".join(_num(x) for x in row) + "\n")
    return buf.getvalue()


def trajectory_to_dict(rec) -> dict:
    out = {
        "mode": rec.mode,
        "times": rec.times,
        "states": rec.states,
        "predictedLimit": rec.predicted_limit,
        "finalDeviation": rec.final_deviation,
    }
    if rec.cesaro is not None:
        out["cesaro"] = rec.cesaro
    if rec.step is not None:
        out["step"] = rec.step
    return out


def spectrum_svg(series: dict, size: int = 480, extent: float = 2.5) -> str:
    """Complex-plane scatter of one or more eigenvalue sets.

    ``series`` maps a label to an array of complex eigenvalues. The plot
    shows the unit circle and the disc ``|z + 1| <= 1`` which holds the
    spectrum of ``S - I``. The view is fixed to ``[-extent, extent]^2``.
    """
    colours = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    scale = size / (2 * extent)

    def px(z):
        return (z.real + extent) * scale, (extent - z.imag) * scale

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="0" y1="{size / 2:.2f}" x2="{size}" y2="{size / 2:.2f}" stroke="#999" stroke-width="1"/>',
        f'<line x1="{size / 2:.2f}" y1="0" x2="{size / 2:.2f}" y2="{size}" stroke="#999" stroke-width="1"/>',
    ]
    cx, cy = px(0j)
    lines.append(
        f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{scale:.2f}" fill="none" stroke="#444" stroke-width="1"/>'
    )
    sx, sy = px(-1 + 0j)
    lines.append(
        f'<circle cx="{sx:.2f}" cy="{sy:.2f}" r="{scale:.2f}" fill="none" stroke="#444" '
        f'stroke-width="1" stroke-dasharray="4 3"/>'
    )
    hidden = 0
    for c, (label, values) in enumerate(series.items()):
        colour = colours[c % len(colours)]
        for z in np.asarray(values, dtype=complex):
            if abs(z.real) > extent or abs(z.imag) > extent:
                hidden += 1
                continue
            x, y = px(z)
            lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="{colour}" fill-opacity="0.8"/>')
        lines.append(
            f'<text x="8" y="{18 + 16 * c}" font-family="sans-serif" font-size="12" '
            f'fill="{colour}">{label}</text>'
        )
    if hidden:
        lines.append(
            f'<text x="8" y="{size - 8}" font-family="sans-serif" font-size="11" fill="#444">'
            f"{hidden} point(s) outside view</text>"
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _sets(groups):
    return [sorted(s) for s in groups]


def analysis_report(g: Digraph, kind: str = "rw") -> dict:
    """Everything the taxonomy, kernel and spectrum modules say about ``g``.

    Raises ``NotWeaklyConnected`` for disconnected graphs.
    """
    a = build_adjacency(g)
    rd = reach_decomposition(g)
    lap = LAPLACIANS[kind](a)
    kb = kernel_basis(lap, rd)
    spec = eigenvalues(lap.M)
    gers = gersgorin_check(lap, spec)
    zeros = spec.zero_multiplicity(1e-7)
    warnings = []
    if a.loop_added:
        warnings.append(f"convention loop added at vertices {sorted(a.loop_added)}")
    if zeros != rd.k:
        warnings.append(f"zero eigenvalue multiplicity {zeros} differs from reach count {rd.k}")
    if not gers.contained:
        warnings.append(f"{len(gers.violations)} eigenvalue(s) outside the Gersgorin discs")
    cond = rd.condensation
    return {
        "graph": {
            "n": g.n,
            "edges": g.edge_count,
            "connectivity": connectivity_class(g),
        },
        "condensation": {
            "sccs": _sets(cond.sccs),
            "edges": [[a_ + 1, b + 1] for a_, b in sorted(cond.dag_edges)],
        },
        "reaches": [
            {
                "reach": sorted(r.reach),
                "cabal": sorted(r.cabal),
                "exclusive": sorted(r.exclusive),
                "common": sorted(r.common),
            }
            for r in rd
        ],
        "k": rd.k,
        "laplacian": {"kind": kind, "matrix": lap.M},
        "gamma": kb.H0.T,
        "gammaBar": kb.H0bar,
        "Gamma": gamma_matrix(kb),
        "spectrum": spec.as_pairs(),
        "zeroMultiplicity": zeros,
        "gersgorin": {
            "centers": gers.centers,
            "radii": gers.radii,
            "contained": gers.contained,
        },
        "warnings": warnings,
    }
