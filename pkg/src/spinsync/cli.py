"""Command-line front door.

Subcommands: spin, gp, certify, mu, simulate, spectrum, lift.  Every JSON
report embeds the tool version and the fully resolved numeric configuration
of the run, so certificates carry their own provenance.  Exit codes:
0 success, 1 validation or parse error, 2 certification failure,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .certificates import (
    certify,
    confront_claims,
    density_sequence,
    first_k_exceeding,
)
from .dynamics import EQ_TOL, monte_carlo, residual
from .errors import (
    CertificationFailedError,
    IoError,
    NoConvergenceError,
    SpinSyncError,
    ThresholdError,
)
from .family import (
    FamilyParams,
    basis_eigenvalues,
    closed_form_spectrum,
    eigenvector_basis,
    family_equilibrium,
    family_graph,
    scaled_hessian,
    stability_criterion,
    tilt_angle,
)
from .fileio import (
    density_rows_csv,
    emit_report,
    format_graph,
    json_dumps,
    parse_graph_file,
    parse_phases_file,
    write_graph,
)
from .graphs import spin
from .lifting import equilibrium_correspondence, spectral_correspondence
from .spectral import eigen, hessian, stability

import numpy as np


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _envelope(command: str, config: dict, report) -> dict:
    return {
        "tool": "spinsync",
        "version": __version__,
        "command": command,
        "config": dict(sorted(config.items())),
        "report": report,
    }


def _write(payload: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(payload)
    else:
        try:
            with open(path, "w") as fh:
                fh.write(payload)
        except OSError as exc:
            raise IoError(str(exc)) from exc


# -- subcommand handlers ---------------------------------------------------------


def _cmd_spin(args) -> int:
    g = parse_graph_file(args.graph)
    s = spin(g, args.k)
    _write(format_graph(s), args.out)
    return 0


def _cmd_gp(args) -> int:
    try:
        a, b, c, d = (int(x) for x in args.params.split(","))
    except ValueError as exc:
        raise _UsageError(f"--params expects 'a,b,c,d' integers, got {args.params!r}") from exc
    p = FamilyParams(a, b, c, d)
    g = family_graph(p)
    theta = family_equilibrium(p)
    m = scaled_hessian(p)
    v = eigenvector_basis(p)
    lams = basis_eigenvalues(p)
    defect = float(np.max(np.abs(m @ v - v * lams)))
    verdict = stability(g, theta)
    report = {
        "params": {"a": a, "b": b, "c": c, "d": d},
        "graph": {"n": g.n, "edges": [list(e) for e in g.edges]},
        "alpha": tilt_angle(p),
        "equilibrium": theta,
        "equilibrium_residual": residual(g, theta),
        "stability_criterion": stability_criterion(p),
        "spectral_verdict": verdict,
        "closed_spectrum": closed_form_spectrum(p),
        "numeric_spectrum": eigen(m).eigenvalues,
        "basis_defect": defect,
    }
    config = {"params": args.params, "out": args.out or "-"}
    _write(json_dumps(_envelope("gp", config, report)), args.out)
    return 0


def _parse_k_range(spec: str) -> range:
    lo, _, hi = spec.partition("..")
    try:
        return range(int(lo), int(hi) + 1)
    except ValueError as exc:
        raise _UsageError(f"--k-range expects 'A..B', got {spec!r}") from exc


def _cmd_certify(args) -> int:
    if args.k is None and args.k_range is None:
        raise _UsageError("certify needs --k or --k-range")
    ks = [args.k] if args.k is not None else list(_parse_k_range(args.k_range))
    worst = 0
    for k in ks:
        cert = certify(k, perturb=args.perturb, seed=args.seed)
        config = {"k": k, "perturb": args.perturb, "seed": args.seed}
        out = args.out
        if out and "{k}" in out:
            out = out.replace("{k}", str(k))
        elif out and len(ks) > 1:
            out = f"{out}.{k}"
        _write(json_dumps(_envelope("certify", config, cert)), out)
        if cert.verdict != "certified":
            worst = 2
    return worst


def _cmd_mu(args) -> int:
    rows = density_sequence(args.kmax)
    if args.format == "csv":
        _write(density_rows_csv(rows), args.out)
        return 0
    report = {"rows": rows, "claimed_thresholds": confront_claims(args.convention)}
    if args.threshold is not None:
        t = Fraction(args.threshold)
        report["threshold"] = t
        report["first_k"] = first_k_exceeding(t, args.convention)
    config = {"kmax": args.kmax, "threshold": args.threshold, "convention": args.convention}
    _write(json_dumps(_envelope("mu", config, report)), args.out)
    return 0


def _cmd_simulate(args) -> int:
    g = parse_graph_file(args.graph)
    report = monte_carlo(
        g,
        trials=args.trials,
        seed=args.seed,
        step=args.step,
        t_max=args.tmax,
        eq_tol=args.eq_tol,
    )
    config = {
        "graph": args.graph,
        "trials": args.trials,
        "seed": args.seed,
        "step": args.step,
        "tmax": args.tmax,
        "eq_tol": args.eq_tol,
    }
    _write(json_dumps(_envelope("simulate", config, report)), args.out)
    return 0


def _cmd_spectrum(args) -> int:
    g = parse_graph_file(args.graph)
    theta = parse_phases_file(args.phases)
    h = hessian(g, theta)
    spec = eigen(h)
    res = residual(g, theta)
    report = {"residual": res, "eigenvalues": spec.eigenvalues}
    if res < args.eq_tol:
        report["stability"] = stability(g, theta, eq_tol=args.eq_tol)
    else:
        report["stability"] = "not_an_equilibrium"
    config = {"graph": args.graph, "phases": args.phases, "eq_tol": args.eq_tol}
    _write(json_dumps(_envelope("spectrum", config, report)), args.out)
    return 0


def _cmd_lift(args) -> int:
    g = parse_graph_file(args.graph)
    theta = parse_phases_file(args.phases)
    base_res, lifted_res = equilibrium_correspondence(g, theta, args.k)
    report = spectral_correspondence(g, theta, args.k, eq_tol=args.eq_tol)
    config = {"graph": args.graph, "phases": args.phases, "k": args.k, "eq_tol": args.eq_tol}
    payload = {
        "base_residual": base_res,
        "lifted_residual": lifted_res,
        "lift": report,
    }
    _write(json_dumps(_envelope("lift", config, payload)), args.out)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinsync", description=__doc__)
    parser.add_argument("--version", action="version", version=f"spinsync {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spin", help="write the k-spinning of a weighted graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_spin)

    gp = sub.add_parser("gp", help="analyze one member of the ring family")
    gp.add_argument("--params", required=True, help="a,b,c,d")
    gp.add_argument("--out", default=None)
    gp.set_defaults(handler=_cmd_gp)

    ct = sub.add_parser("certify", help="emit a non-synchronization certificate")
    ct.add_argument("--k", type=int, default=None)
    ct.add_argument("--k-range", default=None, help="A..B inclusive")
    ct.add_argument("--perturb", action="store_true")
    ct.add_argument("--seed", type=int, default=0)
    ct.add_argument("--out", default=None, help="path; '{k}' expands to the spin count")
    ct.set_defaults(handler=_cmd_certify)

    mu = sub.add_parser("mu", help="exact density table and threshold scan")
    mu.add_argument("--kmax", type=int, required=True)
    mu.add_argument("--threshold", default=None)
    mu.add_argument("--convention", choices=("paper", "strong"), default="paper")
    mu.add_argument("--format", choices=("json", "csv"), default="csv")
    mu.add_argument("--out", default=None)
    mu.set_defaults(handler=_cmd_mu)

    sim = sub.add_parser("simulate", help="Monte Carlo over random initial phases")
    sim.add_argument("--graph", required=True)
    sim.add_argument("--trials", type=int, required=True)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--step", type=float, default=0.01)
    sim.add_argument("--tmax", type=float, default=1e4)
    sim.add_argument("--eq-tol", type=float, default=EQ_TOL)
    sim.add_argument("--out", default=None)
    sim.set_defaults(handler=_cmd_simulate)

    spec = sub.add_parser("spectrum", help="Hessian spectrum and stability at a phase point")
    spec.add_argument("--graph", required=True)
    spec.add_argument("--phases", required=True)
    spec.add_argument("--eq-tol", type=float, default=EQ_TOL)
    spec.add_argument("--out", default=None)
    spec.set_defaults(handler=_cmd_spectrum)

    lf = sub.add_parser("lift", help="equilibrium and spectrum correspondence under spinning")
    lf.add_argument("--graph", required=True)
    lf.add_argument("--phases", required=True)
    lf.add_argument("--k", type=int, required=True)
    lf.add_argument("--eq-tol", type=float, default=EQ_TOL)
    lf.add_argument("--out", default=None)
    lf.set_defaults(handler=_cmd_lift)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(f"spinsync: {exc}", file=sys.stderr)
        return 1
    except NoConvergenceError as exc:
        print(f"spinsync: no convergence: {exc}", file=sys.stderr)
        return 3
    except CertificationFailedError as exc:
        print(f"spinsync: certification failed: {exc}", file=sys.stderr)
        return 2
    except (SpinSyncError, ValueError) as exc:
        print(f"spinsync: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
