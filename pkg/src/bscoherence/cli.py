"""Command-line front end.

Every subcommand prints a small table, either as CSV (with ``#`` provenance
comments) or as aligned plain text. Exit status is 0 on success, 1 when a
computation fails or a certified bound is violated, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import __version__, analytic, figures, network, optimize, oracle
from .coherence import l1_pure
from .exceptions import CascadeError, DomainError, TruncationError


class UsageError(Exception):
    pass


@dataclass
class Report:
    columns: List[str]
    rows: List[tuple]
    notes: List[str] = field(default_factory=list)
    ok: bool = True


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def render(report: Report, fmt: str, provenance: str) -> str:
    cells = [[_fmt(v) for v in row] for row in report.rows]
    if fmt == "csv":
        lines = [f"# {provenance}"] + [f"# {n}" for n in report.notes]
        lines.append(",".join(report.columns))
        lines += [",".join(r) for r in cells]
        return "\n".join(lines) + "\n"
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(report.columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(report.columns, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
    lines += [f"# {n}" for n in report.notes]
    return "\n".join(lines) + "\n"


# -- validation -------------------------------------------------------------


def _need(args, name, flag=None):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{flag or name} is required")
    return v


def _nonneg(v, flag):
    if v is not None and (not math.isfinite(v) or v < 0):
        raise UsageError(f"{flag} must be finite and >= 0, got {v}")


def validate(args) -> None:
    _nonneg(args.nbar, "--nbar")
    if args.n is not None and args.n < 0:
        raise UsageError(f"--n must be >= 0, got {args.n}")
    if args.N is not None and args.N < 0:
        raise UsageError(f"--N must be >= 0, got {args.N}")
    if not 0 < args.tail_epsilon < 1:
        raise UsageError(f"--tail-epsilon must lie in (0, 1), got {args.tail_epsilon}")
    if args.cutoff is not None and args.cutoff < 0:
        raise UsageError(f"--cutoff must be >= 0, got {args.cutoff}")
    cmd = args.command
    if cmd == "coherent":
        _need(args, "nbar")
        _need(args, "N")
    elif cmd == "number":
        _need(args, "n")
        _need(args, "N")
    elif cmd == "mixed":
        _need(args, "nbar")
        _need(args, "N")
    elif cmd == "cascade":
        picked = sum(bool(x) for x in (args.config1, args.config2, args.file))
        if picked != 1:
            raise UsageError("choose exactly one of --config1, --config2, --file")
        if args.config1 and (args.depth is None or args.depth < 1):
            raise UsageError("--config1 needs --depth >= 1")
        if args.config2:
            _need(args, "N")
        if args.input is None:
            args.input = "number" if args.n is not None else "coherent" if args.nbar is not None else None
        if args.input == "number" and args.n is None:
            raise UsageError("--input number needs --n")
        if args.input == "coherent" and args.nbar is None:
            raise UsageError("--input coherent needs --nbar")
    elif cmd == "optimize":
        _need(args, "nbar" if args.input == "coherent" else "n")
        if args.resolution < 3 or args.resolution % 2 == 0:
            raise UsageError("--resolution must be odd and >= 3")
        if args.perturb:
            _need(args, "N")
            if not 0 <= args.delta < 1.0 / (args.N + 1) and args.N > 0:
                raise UsageError("--delta must lie in [0, 1/(N+1))")
            if args.trials < 1:
                raise UsageError("--trials must be >= 1")
    elif cmd == "figure":
        if args.id not in figures.FIGURE_IDS:
            raise UsageError(f"unknown figure {args.id}; valid ids are {', '.join(map(str, figures.FIGURE_IDS))}")


# -- subcommands ------------------------------------------------------------


def cmd_coherent(args) -> Report:
    nb, N, eps = args.nbar, args.N, args.tail_epsilon
    exact = analytic.max_coherent_coherence(nb, N, eps)
    bound = analytic.max_coherent_bound(nb, N, eps)
    approx = analytic.max_coherent_approx(nb, N) if nb > 0 else float("nan")
    cols = ["nbar", "N", "exact", "approx", "bound"]
    row = [nb, N, exact, approx, bound]
    rep = Report(cols, [])
    if args.oracle:
        st = oracle.coherent_input_state(nb, N + 1, eps, cutoff=args.cutoff)
        val, obound = oracle.truncated_l1(oracle.propagate(network.config2(N), st))
        diff = exact - val
        cols += ["oracle", "oracle_bound", "difference"]
        row += [val, obound, diff]
        rep.ok = -(bound + 1e-12) <= diff <= obound + bound + 1e-12 * max(1.0, exact)
        rep.notes.append(f"oracle cutoff {st.cutoff}, tail mass {st.tail_mass:.3g}")
    rep.rows.append(tuple(row))
    return rep


def cmd_number(args) -> Report:
    n, N = args.n, args.N
    cmax = analytic.max_number_coherence(n, N)
    csup = analytic.supremum_coherence(n, N)
    cols = ["n", "N", "max", "supremum", "ratio"]
    row = [n, N, cmax, csup, cmax / csup if csup else float("nan")]
    rep = Report(cols, [])
    if args.oracle:
        out = oracle.propagate(network.config2(N), oracle.number_input_state(n, N + 1))
        val = l1_pure(out.to_pure_state())
        cols += ["oracle", "difference"]
        row += [val, cmax - val]
        rep.ok = abs(cmax - val) < 1e-9 * max(1.0, cmax)
    rep.rows.append(tuple(row))
    return rep


def cmd_mixed(args) -> Report:
    nb, N, eps = args.nbar, args.N, args.tail_epsilon
    kind = "thermal" if args.thermal else "poisson"
    dist = analytic.PhotonDistribution(kind, nb, eps, cutoff=args.cutoff)
    avg = analytic.mixed_coherence(dist, N)
    tail = analytic.mixed_coherence_tail_bound(dist, N)
    cols = ["kind", "nbar", "N", "sector_average", "tail_bound"]
    row = ["thermal" if args.thermal else "phase-averaged", nb, N, avg, tail]
    notes = [f"cutoff {dist.cutoff}, tail mass {dist.tail_mass:.3g}"]
    if not args.thermal:
        pure = analytic.max_coherent_coherence(nb, N, eps)
        cols += ["pure_coherent", "difference"]
        row += [pure, pure - avg]
        notes.append("difference = pure coherent input minus phase-averaged input (inter-sector terms)")
    elif args.asymptotic:
        if nb > 0:
            closed = analytic.thermal_coherence_approx(nb, N)
            quad = analytic.thermal_coherence_approx_check(nb, N, args.nodes)
        else:
            closed = quad = float("nan")
        cols += ["asymptotic", "quadrature"]
        row += [closed, quad]
    rep = Report(cols, [tuple(row)], notes)
    rep.ok = tail < 1e-6 * max(1.0, avg)
    if not rep.ok:
        rep.notes.append("tail bound too large; raise --cutoff or lower --tail-epsilon")
    return rep


def _load_cascade(args) -> network.Cascade:
    if args.config1:
        return network.config1(args.depth)
    if args.config2:
        return network.config2(args.N)
    with open(args.file) as fh:
        return network.parse_cascade(fh.read())


def cmd_cascade(args) -> Report:
    cas = _load_cascade(args)
    tau = network.tau_vector(cas)
    dev = float(np.max(np.abs(tau - network.optimal_split(cas.N))))
    rows = [(j, float(t)) for j, t in enumerate(tau)]
    notes = [f"modes {cas.mode_count}, splitters {len(cas.splitters)}",
             f"max deviation from uniform {dev:.12g}"]
    # coherence depends on |tau_j| only
    if args.input == "number":
        coh = analytic.number_coherence(args.n, np.abs(tau))
        notes.append(f"output coherence for number(n={args.n}): {coh:.12g}")
    elif args.input == "coherent":
        coh = analytic.product_coherence(args.nbar * tau ** 2, args.tail_epsilon)
        notes.append(f"output coherence for coherent(nbar={args.nbar:g}): {coh:.12g}")
    return Report(["mode", "tau"], rows, notes)


def cmd_optimize(args) -> Report:
    amount = args.nbar if args.input == "coherent" else args.n
    if args.perturb:
        rep = optimize.perturbation_test(args.input, amount, args.N, args.trials, args.delta, args.seed)
        return Report(["kind", "amount", "N", "trials", "delta", "baseline", "worst_violation", "passed"],
                      [(args.input, amount, args.N, args.trials, args.delta, rep.baseline,
                        rep.worst_violation, rep.passed)], ok=rep.passed)
    res = optimize.grid_search_single_splitter(args.input, amount, args.resolution)
    notes = [f"argmax theta {res.theta_best:.12g} ({res.theta_best / math.pi:.12g} pi), "
             f"coherence {res.value_best:.12g}"]
    return Report(["theta", "coherence"], list(zip(res.thetas, res.values)), notes)


def cmd_figure(args) -> Report:
    cols, rows = figures.figure_data(args.id, nbar_max=args.nbar_max, n_max=args.n_max,
                                     N_max=args.N_max, step=args.step)
    return Report(cols, rows)


COMMANDS = {
    "coherent": cmd_coherent,
    "number": cmd_number,
    "mixed": cmd_mixed,
    "cascade": cmd_cascade,
    "optimize": cmd_optimize,
    "figure": cmd_figure,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, help="number of beam splitters")
    common.add_argument("--nbar", type=float, help="mean photon number")
    common.add_argument("--n", type=int, help="photon number")
    common.add_argument("--cutoff", type=int, help="photon-number cutoff for truncated states")
    common.add_argument("--tail-epsilon", type=float, default=analytic.DEFAULT_TAIL_EPSILON)
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--format", choices=("csv", "plain"), default=None)
    common.add_argument("--oracle", action="store_true", help="cross-check by brute-force propagation")

    p = argparse.ArgumentParser(prog="bscoherence", description="Coherence generated by beam-splitter cascades.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("coherent", parents=[common], help="coherent input, equal split")
    sub.add_parser("number", parents=[common], help="number-state input, equal split")

    m = sub.add_parser("mixed", parents=[common], help="phase-averaged or thermal input")
    g = m.add_mutually_exclusive_group(required=True)
    g.add_argument("--phase-averaged", action="store_true")
    g.add_argument("--thermal", action="store_true")
    m.add_argument("--asymptotic", action="store_true", help="add the large-nbar thermal formula")
    m.add_argument("--nodes", type=int, default=32, help="quadrature nodes for the asymptotic check")

    c = sub.add_parser("cascade", parents=[common], help="split vector of a cascade")
    c.add_argument("--config1", action="store_true", help="balanced binary tree")
    c.add_argument("--config2", action="store_true", help="graded linear chain")
    c.add_argument("--depth", type=int, help="tree depth for --config1")
    c.add_argument("--file", help="cascade description file")
    c.add_argument("--input", choices=("number", "coherent"), help="input family (inferred from --n/--nbar)")

    o = sub.add_parser("optimize", parents=[common], help="angle sweep or perturbation test")
    o.add_argument("--input", choices=optimize.KINDS, default="coherent")
    o.add_argument("--resolution", type=int, default=181)
    o.add_argument("--perturb", action="store_true", help="perturbation test around the equal split")
    o.add_argument("--trials", type=int, default=100)
    o.add_argument("--delta", type=float, default=0.05)
    o.add_argument("--seed", type=int, default=0)

    f = sub.add_parser("figure", parents=[common], help="emit figure data")
    f.add_argument("id", type=int)
    f.add_argument("--nbar-max", type=float)
    f.add_argument("--n-max", type=int)
    f.add_argument("--N-max", type=int)
    f.add_argument("--step", type=float)
    return p


def _provenance(argv: Sequence[str]) -> str:
    # the output destination does not affect the data
    kept = []
    skip = False
    for a in argv:
        if skip:
            skip = False
        elif a == "--out":
            skip = True
        elif not a.startswith("--out="):
            kept.append(a)
    return f"bscoherence {__version__}: {' '.join(kept)}"


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        validate(args)
    except UsageError as exc:
        parser.error(str(exc))
    fmt = args.format or ("csv" if args.command in ("figure", "optimize") else "plain")
    try:
        report = COMMANDS[args.command](args)
    except TruncationError as exc:
        need = f" (required cutoff {exc.required_cutoff})" if exc.required_cutoff is not None else ""
        print(f"bscoherence: truncation error: {exc}{need}", file=sys.stderr)
        return 1
    except (CascadeError, DomainError, OSError) as exc:
        print(f"bscoherence: error: {exc}", file=sys.stderr)
        return 1
    text = render(report, fmt, _provenance(argv))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not report.ok:
        print("bscoherence: certified bound not satisfied", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
