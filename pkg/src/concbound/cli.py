"""Command-line front end: state generation, bound evaluation, roof
estimates and distillability verdicts, with optional JSON reports.

Exit codes: 0 on success, 1 for input/validation problems, 2 for numerical
failures (including a non-converged optimizer, which still prints its best
value).  With ``--json`` exactly one JSON document is written to stdout;
all diagnostics go to stderr.
"""
import argparse
import json
import sys
import time

import numpy as np

from . import __version__, bounds, distill, states
from .concurrence import RoofOptions
from .errors import ConcboundError, NumericalError

SCHEMA = "concbound/1"

_BOUND_KINDS = ("tau22", "kappa", "zeta", "chen", "combined", "all")


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors: exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_params(items):
    params = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"--param expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        params[key.strip()] = float(value)
    return params


def _parse_weights(items):
    weights = {}
    for item in items or []:
        try:
            st, _, w = item.partition(":")
            s, t = (int(x) for x in st.split(","))
            weights[(s, t)] = float(w)
        except ValueError as exc:
            raise ValueError(f"--weights expects s,t:weight, got {item!r}") from exc
    return weights or None


def _parse_inner(items):
    inner = {}
    for item in items or []:
        key, sep, w = item.partition("=")
        if not sep:
            raise ValueError(f"--inner expects kind=weight, got {item!r}")
        inner[key.strip()] = float(w)
    return inner or None


def _load_state(args):
    if getattr(args, "builtin", None):
        return states.builtin(args.builtin, **_parse_params(args.param))
    if getattr(args, "infile", None):
        return states.load(args.infile, psd_tol=args.psd_tol)
    raise ValueError("provide --builtin NAME or --in PATH")


def _report(args, command, fingerprint, results, seed, elapsed):
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "args": {k: v for k, v in sorted(vars(args).items()) if k != "func"},
        "seed": seed,
        "fingerprint": fingerprint,
        "results": results,
        "timing": {"seconds": elapsed},
    }


def _emit(args, report, human_lines):
    if args.json:
        json.dump(report, sys.stdout, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for line in human_lines:
            print(line)


def _bound_dict(rep):
    return {
        "kind": rep.kind,
        "s": rep.s,
        "t": rep.t,
        "value_sq": rep.value_sq,
        "value": rep.value,
        "certified": rep.certified,
        "blocks": [{"rows": list(sel.rows), "cols": list(sel.cols),
                    "contribution": c} for sel, c in rep.blocks],
    }


def _bound_line(rep):
    tag = "certified" if rep.certified else "estimate, NOT certified"
    return (f"{rep.kind:<18} s={rep.s} t={rep.t}  "
            f"C^2 >= {rep.value_sq:.9g}  C >= {rep.value:.9g}  [{tag}]")


def cmd_gen(args):
    state = states.builtin(args.builtin, **_parse_params(args.param))
    t0 = time.perf_counter()
    fp = states.fingerprint(state)
    if args.out:
        try:
            states.save(state, args.out)
        except OSError as exc:
            print(f"write failed: {exc}", file=sys.stderr)
            return 2
    report = _report(args, "gen", fp, {"written": args.out}, None,
                     time.perf_counter() - t0)
    _emit(args, report, [
        f"state {args.builtin}: m={fp['m']} n={fp['n']} trace={fp['trace']:.9g} "
        f"min_eig={fp['min_eigenvalue']:.3e}",
        f"written to {args.out}" if args.out else "no --out given, nothing written",
    ])
    return 0


def cmd_bound(args):
    state = _load_state(args)
    t0 = time.perf_counter()
    kind = args.kind
    if kind in ("kappa", "zeta") and (args.s is None or args.t is None):
        raise ValueError(f"--kind {kind} requires --s and --t")
    if kind == "tau22":
        reports = [bounds.tau22(state)]
    elif kind == "kappa":
        reports = [bounds.kappa(state, args.s, args.t)]
    elif kind == "zeta":
        reports = [bounds.zeta(state, args.s, args.t)]
    elif kind == "chen":
        reports = [bounds.chen_global(state)]
    elif kind == "combined":
        reports = [bounds.combined(state, _parse_weights(args.weights),
                                   _parse_inner(args.inner))]
    elif kind == "all":
        reports = bounds.evaluate_all(state)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    elapsed = time.perf_counter() - t0
    report = _report(args, "bound", states.fingerprint(state),
                     {"bounds": [_bound_dict(r) for r in reports]}, None, elapsed)
    _emit(args, report, [_bound_line(r) for r in reports])
    return 0


def cmd_roof(args):
    state = _load_state(args)
    opts = RoofOptions(ensemble_size=args.ensemble_size, restarts=args.restarts,
                       max_sweeps=args.max_sweeps, tol=args.tol, seed=args.seed)
    t0 = time.perf_counter()
    rep, converged = bounds.tau_roof_estimate(state, args.s, args.t, opts)
    elapsed = time.perf_counter() - t0
    results = {"bounds": [_bound_dict(rep)], "converged": converged}
    report = _report(args, "roof", states.fingerprint(state), results,
                     args.seed, elapsed)
    _emit(args, report, [
        "NOTE: roof-based value is an estimate, NOT a certified bound",
        _bound_line(rep),
        f"converged: {converged}",
    ])
    return 0 if converged else 2


def cmd_distill(args):
    state = _load_state(args)
    t0 = time.perf_counter()
    v = distill.verdict(state, max_copies=args.copies, rotations=args.rotations,
                        seed=args.seed)
    elapsed = time.perf_counter() - t0
    witness = None
    if v.witness is not None:
        witness = {
            "copies": v.witness.copies,
            "rows": list(v.witness.rows),
            "cols": list(v.witness.cols),
            "orientation": v.witness.orientation,
            "min_pt_eig": v.witness.min_pt_eig,
            "rotation": v.witness.rotation,
        }
    results = {"decision": v.decision, "criteria": v.criteria, "witness": witness}
    report = _report(args, "distill", states.fingerprint(state), results,
                     args.seed, elapsed)
    lines = [f"distillable: {v.decision}"]
    for name, fired in v.criteria.items():
        lines.append(f"  {name:<10} {'fires' if fired else 'silent'}")
    if witness:
        lines.append(f"  witness: N={witness['copies']} rows={witness['rows']} "
                     f"cols={witness['cols']} ({witness['orientation']}) "
                     f"min PT eig {witness['min_pt_eig']:.3e}")
    _emit(args, report, lines)
    return 0


def _add_state_source(p):
    p.add_argument("--builtin", choices=states.BUILTIN_NAMES,
                   help="builtin state name")
    p.add_argument("--in", dest="infile", help="state file to load")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="builtin parameter (repeatable)")
    p.add_argument("--psd-tol", type=float, default=1e-8,
                   help="positivity tolerance when loading files")
    p.add_argument("--json", action="store_true",
                   help="emit one JSON report on stdout")


def build_parser():
    parser = _Parser(prog="concbound",
                     description="Concurrence lower bounds and distillability checks "
                                 "for bipartite states.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a builtin state and write it to a file")
    p.add_argument("--builtin", required=True, choices=states.BUILTIN_NAMES)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--out", help="output path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bound", help="evaluate certified lower bounds")
    _add_state_source(p)
    p.add_argument("--kind", choices=_BOUND_KINDS, default="all")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--weights", action="append", metavar="S,T:W",
                   help="combined-bound weight per block size (repeatable)")
    p.add_argument("--inner", action="append", metavar="KIND=W",
                   help="combined-bound weight per inner kind (repeatable)")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("roof", help="roof-based sub-block estimate (not certified)")
    _add_state_source(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ensemble-size", type=int, default=None)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--max-sweeps", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_roof)

    p = sub.add_parser("distill", help="sufficient distillability criteria")
    _add_state_source(p)
    p.add_argument("--copies", type=int, default=2)
    p.add_argument("--rotations", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_distill)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ConcboundError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
