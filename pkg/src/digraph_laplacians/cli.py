"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 graph not weakly connected,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import report
from .dynamics import (
    SingularSystem,
    StepUnderflow,
    StochasticityViolation,
    absorption_probabilities,
    hitting_times,
    simulate_continuous,
    simulate_discrete,
)
from .graph import ParseError, build_adjacency, read_digraph
from .kernels import PerronIterationDiverged, SingularCommonBlock, kernel_basis
from .laplacian import rw_laplacian
from .spectrum import NoConvergence, eigenvalues
from .taxonomy import NotWeaklyConnected, reach_decomposition
from .walks import sample_walks

EXIT_OK, EXIT_INPUT, EXIT_CONNECTIVITY, EXIT_NUMERIC = 0, 2, 3, 4

MODES = (
    "consensus-continuous",
    "diffusion-continuous",
    "consensus-discrete",
    "diffusion-discrete",
)


class InputError(ValueError):
    pass


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _note(msg: str):
    print(msg, file=sys.stderr)


def parse_init(spec: str, n: int) -> np.ndarray:
    """``uniform``, ``vertex:<id>`` or ``file:<path>`` holding ``n`` floats."""
    if spec == "uniform":
        return np.ones(n)
    kind, _, rest = spec.partition(":")
    if kind == "vertex":
        try:
            v = int(rest)
        except ValueError:
            raise InputError(f"invalid vertex in init spec {spec!r}") from None
        if not 1 <= v <= n:
            raise InputError(f"init vertex {v} out of range 1..{n}")
        x = np.zeros(n)
        x[v - 1] = 1.0
        return x
    if kind == "file":
        try:
            values = np.array(Path(rest).read_text(encoding="utf-8").split(), dtype=float)
        except OSError as exc:
            raise InputError(f"cannot read init file: {exc}") from None
        except ValueError:
            raise InputError(f"init file {rest!r} holds non-numeric values") from None
        if values.size != n:
            raise InputError(f"init file has {values.size} values, graph has {n} vertices")
        return values
    raise InputError(f"init spec must be uniform, vertex:<id> or file:<path>, got {spec!r}")


def cmd_analyze(args) -> int:
    g = read_digraph(args.path)
    rep = report.analysis_report(g, args.kind)
    if args.json:
        _emit(args, report.dumps(rep))
        return EXIT_OK
    lines = [
        f"n={rep['graph']['n']} edges={rep['graph']['edges']} "
        f"connectivity={rep['graph']['connectivity']} laplacian={args.kind}",
        f"reaches: k={rep['k']}",
    ]
    for m, r in enumerate(rep["reaches"], start=1):
        lines.append(
            f"  R{m}={r['reach']} B{m}={r['cabal']} H{m}={r['exclusive']} C{m}={r['common']}"
        )
    lines.append("gamma (columns are reaches):")
    lines += ["  " + " ".join(f"{x:.6g}" for x in row) for row in np.asarray(rep["gamma"]).T]
    lines.append("gammaBar:")
    lines += ["  " + " ".join(f"{x:.6g}" for x in row) for row in rep["gammaBar"]]
    lines.append("Gamma:")
    lines += ["  " + " ".join(f"{x:.6g}" for x in row) for row in rep["Gamma"]]
    lines.append("spectrum:")
    lines += [f"  {p['re']:.10g} {p['im']:+.10g}i" for p in rep["spectrum"]]
    lines.append(f"zero multiplicity: {rep['zeroMultiplicity']}")
    lines += [f"warning: {w}" for w in rep["warnings"]]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    g = read_digraph(args.path)
    a = build_adjacency(g)
    x0 = parse_init(args.init, g.n)
    dynamic, clock = args.mode.split("-")
    if clock == "continuous":
        lap = report.LAPLACIANS[args.kind](a)
        rec = simulate_continuous(lap, x0, args.horizon, args.samples, dynamic)
    else:
        rec = simulate_discrete(a.S, x0, args.steps, dynamic, stride=args.stride)
        last = rec.states[-1]
        moved = a.S @ last if dynamic == "consensus" else last @ a.S
        if np.abs(moved - last).max() > 1e-9:
            _note("warning: raw iterates periodic; see cesaro column")
    text = report.dumps(report.trajectory_to_dict(rec)) if args.json else report.trajectory_to_csv(rec)
    _emit(args, text)
    _note("predicted limit: " + " ".join(report._num(x) for x in rec.predicted_limit))
    _note(f"final deviation: {rec.final_deviation:.3e}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g = read_digraph(args.path)
    a = build_adjacency(g)
    lap = report.LAPLACIANS[args.kind](a)
    spec_l = eigenvalues(lap.M)
    spec_s = eigenvalues(a.S)
    out = {
        "kind": args.kind,
        "laplacian": spec_l.as_pairs(),
        "S": spec_s.as_pairs(),
        "zeroMultiplicity": spec_l.zero_multiplicity(1e-7),
    }
    if args.svg:
        svg = report.spectrum_svg(
            {"eigenvalues of S": spec_s.eigenvalues, f"eigenvalues of -L ({args.kind})": -spec_l.eigenvalues}
        )
        Path(args.svg).write_text(svg, encoding="utf-8")
    if args.json:
        _emit(args, report.dumps(out))
    else:
        lines = [f"{args.kind} Laplacian:"]
        lines += [f"  {p['re']:.10g} {p['im']:+.10g}i" for p in out["laplacian"]]
        lines.append("S:")
        lines += [f"  {p['re']:.10g} {p['im']:+.10g}i" for p in out["S"]]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_hitting_times(args) -> int:
    g = read_digraph(args.path)
    a = build_adjacency(g)
    rd = reach_decomposition(g)
    sol = hitting_times(rw_laplacian(a), rd)
    out = {"B": sorted(sol.B), "tau": sol.tau}
    if args.walks:
        out["seed"] = args.seed
        out["monteCarlo"] = [
            sample_walks(a.S, rd, j, args.walks, seed=args.seed + j).mean_hitting_time()
            for j in range(1, g.n + 1)
        ]
        out["walks"] = args.walks
    if args.json:
        _emit(args, report.dumps(out))
    else:
        lines = [f"B = {sorted(sol.B)}"]
        for j in range(g.n):
            extra = f"  (monte carlo {out['monteCarlo'][j]:.4f})" if args.walks else ""
            lines.append(f"tau({j + 1}) = {sol.tau[j]:.10g}{extra}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_absorb(args) -> int:
    g = read_digraph(args.path)
    a = build_adjacency(g)
    rd = reach_decomposition(g)
    if not 1 <= args.vertex <= g.n:
        raise InputError(f"vertex {args.vertex} out of range 1..{g.n}")
    kb = kernel_basis(rw_laplacian(a), rd)
    probs = absorption_probabilities(kb, args.vertex)
    out = {
        "vertex": args.vertex,
        "cabals": [sorted(r.cabal) for r in rd],
        "probabilities": probs,
    }
    if args.walks:
        sample = sample_walks(a.S, rd, args.vertex, args.walks, seed=args.seed)
        out["seed"] = args.seed
        out["walks"] = args.walks
        out["monteCarlo"] = sample.absorption_frequencies(rd.k)
    if args.json:
        _emit(args, report.dumps(out))
    else:
        lines = []
        for m, r in enumerate(rd):
            extra = f"  (monte carlo {out['monteCarlo'][m]:.4f})" if args.walks else ""
            lines.append(f"cabal {sorted(r.cabal)}: {probs[m]:.10g}{extra}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    # Global flags work before or after the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Monte Carlo seed")

    parser = argparse.ArgumentParser(
        prog="digraph-laplacians",
        description="Laplacian dynamics on weighted digraphs.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="taxonomy, kernels, Gamma and spectrum")
    p.add_argument("path")
    p.add_argument("--kind", choices=["comb", "rw"], default="rw")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", parents=[common], help="consensus or diffusion trajectory")
    p.add_argument("path")
    p.add_argument("--mode", choices=MODES, default="consensus-continuous")
    p.add_argument("--init", default="uniform", help="uniform | vertex:<id> | file:<path>")
    p.add_argument("--kind", choices=["comb", "rw"], default="rw")
    p.add_argument("--horizon", type=float, default=50.0)
    p.add_argument("--samples", type=int, default=100, help="sample intervals (continuous)")
    p.add_argument("--steps", type=int, default=1000, help="iterations (discrete)")
    p.add_argument("--stride", type=int, default=1, help="record every n-th iterate (discrete)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of L and S")
    p.add_argument("path")
    p.add_argument("--kind", choices=["comb", "rw"], default="rw")
    p.add_argument("--svg", help="also write a complex-plane plot here")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("hitting-times", parents=[common], help="expected time to hit the cabals")
    p.add_argument("path")
    p.add_argument("--walks", type=int, default=0, help="Monte Carlo walks per vertex")
    p.set_defaults(func=cmd_hitting_times)

    p = sub.add_parser("absorb", parents=[common], help="absorption probabilities from a vertex")
    p.add_argument("path")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--walks", type=int, default=0, help="Monte Carlo walks")
    p.set_defaults(func=cmd_absorb)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("out", None), ("json", False), ("seed", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except (OSError, ParseError, InputError) as exc:
        _note(f"error: {exc}")
        return EXIT_INPUT
    except NotWeaklyConnected as exc:
        _note(f"error: {exc}")
        _note("hint: analyse each weakly connected component as its own graph")
        return EXIT_CONNECTIVITY
    except (
        NoConvergence,
        SingularCommonBlock,
        PerronIterationDiverged,
        StochasticityViolation,
        StepUnderflow,
        SingularSystem,
    ) as exc:
        _note(f"numerical failure: {exc}")
        return EXIT_NUMERIC
    except ValueError as exc:
        _note(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
