"""Command-line front end.

Exit codes: 0 success (or FixedPoint), 2 bad input, 3 MaxIterExceeded,
4 BoundViolation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from mvfix import corpus
from mvfix.errors import MvfixError, ProblemFileError
from mvfix.gauges import check_geraghty_class, check_mizoguchi_takahashi, estimate_nadler_constant
from mvfix.hausdorff import hausdorff, hyperspace_distance
from mvfix.numeric import TOLERANCE_ENV, Mode, format_scalar, parse_scalar
from mvfix.problem import dump_problem, example_problem, load_problem, parse_gauge
from mvfix.solver import FixedPoint, MaxIterExceeded, all_pairs, iterate

EXIT_OK, EXIT_INPUT, EXIT_MAXITER, EXIT_BOUND = 0, 2, 3, 4


class InputError(Exception):
    pass


def _resolve_set(problem, ids, set_name, image_of, label):
    given = [x for x in (ids, set_name, image_of) if x is not None]
    if len(given) != 1:
        raise InputError(f"give exactly one of --{label}, --{label}-set, --{label}-image")
    if ids is not None:
        return problem.set_of([s for s in ids.split(",") if s])
    if set_name is not None:
        if set_name not in problem.sets:
            raise ProblemFileError("sets", f"no set named {set_name!r}")
        return problem.sets[set_name]
    if problem.map is None:
        raise ProblemFileError("map", "--*-image needs a map")
    return problem.map.image(problem.point(image_of))


def cmd_hausdorff(args) -> int:
    problem = load_problem(args.file)
    A = _resolve_set(problem, args.a, args.a_set, args.a_image, "a")
    B = _resolve_set(problem, args.b, args.b_set, args.b_image, "b")
    value = hausdorff(problem.metric, A, B) if A.level == 1 else hyperspace_distance(problem.metric, A, B)
    print(format_scalar(value))
    return EXIT_OK


def cmd_iterate(args) -> int:
    problem = load_problem(args.file)
    if problem.map is None:
        raise ProblemFileError("map", "missing")
    if problem.gauge is None:
        raise ProblemFileError("gauge", "missing")
    x0 = args.x0 or problem.x0
    if x0 is None:
        raise ProblemFileError("solver.x0", "missing (or pass --x0)")
    tol = parse_scalar(args.tol, problem.mode) if args.tol is not None else problem.tol
    max_iter = args.max_iter if args.max_iter is not None else (problem.max_iter or 10_000)
    trace = iterate(problem.map, problem.metric, problem.gauge, problem.point(x0), tol, max_iter)
    if args.trace_out:
        if args.trace_out == "-":
            trace.write_csv(sys.stdout)
        else:
            with open(args.trace_out, "w", newline="") as fh:
                trace.write_csv(fh)
    print(trace.summary())
    if isinstance(trace.outcome, FixedPoint):
        return EXIT_OK
    if isinstance(trace.outcome, MaxIterExceeded):
        return EXIT_MAXITER
    return EXIT_BOUND


def cmd_verify_example(args) -> int:
    r = parse_scalar(args.nadler_r, Mode.EXACT) if args.nadler_r is not None else None
    report = corpus.verify_example(args.depth, r, sweep_depth=args.sweep_depth)
    print(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK


def _scalar_list(spec: str, mode: Mode) -> list:
    """``tau:N`` | ``range:a:b[:step]`` | ``pow2:i:j`` (2^-i .. 2^-j) | comma list."""
    kind, _, rest = spec.partition(":")
    if kind == "tau":
        return corpus.tau_sequence(int(rest))
    if kind == "range":
        parts = [parse_scalar(p, mode) for p in rest.split(":")]
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else (1.0 if mode is Mode.FLOAT else Fraction(1))
        out, t = [], start
        while t <= stop:
            out.append(t)
            t = t + step
        return out
    if kind == "pow2":
        i, j = (int(p) for p in rest.split(":"))
        vals = [Fraction(1, 2 ** k) for k in range(i, j + 1)]
        return [float(v) for v in vals] if mode is Mode.FLOAT else vals
    return [parse_scalar(p, mode) for p in spec.split(",") if p]


def cmd_check_gauge(args) -> int:
    mode = Mode(args.mode)
    if args.example_depth is not None:
        gauge = corpus.example_gauge(args.example_depth)
        mode = Mode.EXACT
    elif args.gauge is not None:
        try:
            spec = json.loads(args.gauge)
        except json.JSONDecodeError as exc:
            raise ProblemFileError("gauge", f"invalid JSON: {exc}") from None
        gauge = parse_gauge(spec.get("gauge", spec), mode)
    elif args.file is not None:
        problem = load_problem(args.file)
        if problem.gauge is None:
            raise ProblemFileError("gauge", "missing")
        gauge, mode = problem.gauge, problem.mode
    else:
        raise InputError("give --gauge, --file or --example-depth")
    probes = _scalar_list(args.probes or (f"tau:{args.example_depth}" if args.example_depth else "range:0:100"), mode)
    eps = _scalar_list(args.eps, Mode.EXACT)
    report = check_geraghty_class(gauge, probes, eps)
    t0 = parse_scalar(args.t0, mode)
    deltas = _scalar_list(args.deltas, Mode.EXACT) if args.deltas else None
    mt = check_mizoguchi_takahashi(gauge, t0, probes, deltas)
    out = {"class_S": report.to_dict(), "mizoguchi_takahashi": mt.to_dict()}
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        print(f"class S: {report.verdict} ({report.reason})")
        for e, s in zip(report.epsilons, report.sups):
            print(f"  eps={format_scalar(e):<10} s={'none' if s is None else format_scalar(s)}")
        print(f"Mizoguchi-Takahashi at t0={format_scalar(t0)}: {mt.verdict} "
              f"(limsup estimate {format_scalar(mt.limsup)} ~ {float(mt.limsup):.6g})")
    return EXIT_OK


def cmd_nadler_constant(args) -> int:
    problem = load_problem(args.file)
    if problem.map is None:
        raise ProblemFileError("map", "missing")
    if args.pairs:
        pairs = []
        for chunk in args.pairs.split(","):
            x, _, y = chunk.partition(":")
            pairs.append((problem.point(x), problem.point(y)))
    else:
        pairs = all_pairs(sorted(problem.points.values(), key=lambda p: p.id))
    est = estimate_nadler_constant(problem.map, problem.metric, pairs)
    x, y = est.witness
    print(f"{format_scalar(est.ratio)} witness {x.label()} {y.label()}")
    return EXIT_OK


def cmd_export_example(args) -> int:
    doc = dump_problem(example_problem(args.depth, args.x0))
    text = json.dumps(doc, indent=1)
    if args.output in (None, "-"):
        print(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mvfix", description=(
        "Hausdorff metrics, contraction checks and fixed-point iteration for set-valued maps. "
        f"Set {TOLERANCE_ENV} to override the float comparison tolerance."))
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hausdorff", help="Hausdorff distance between two sets of a problem file")
    h.add_argument("file")
    for side in ("a", "b"):
        h.add_argument(f"--{side}", help="comma-separated point ids")
        h.add_argument(f"--{side}-set", help="name of a set in the file's 'sets'")
        h.add_argument(f"--{side}-image", help="use T(id) as the set")
    h.set_defaults(func=cmd_hausdorff)

    it = sub.add_parser("iterate", help="run the fixed-point iteration")
    it.add_argument("file")
    it.add_argument("--x0")
    it.add_argument("--tol")
    it.add_argument("--max-iter", type=int)
    it.add_argument("--trace-out", help="CSV path, or - for stdout")
    it.set_defaults(func=cmd_iterate)

    v = sub.add_parser("verify-example", help="check the l-infinity example's claims exactly")
    v.add_argument("--depth", type=int, default=30)
    v.add_argument("--nadler-r", help='contraction constant to falsify, e.g. "9/10"')
    v.add_argument("--sweep-depth", type=int, default=corpus.DEFAULT_SWEEP_DEPTH)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify_example)

    g = sub.add_parser("check-gauge", help="class-S and Mizoguchi-Takahashi probe checks")
    g.add_argument("--gauge", help='JSON gauge spec, e.g. \'{"kind": "constant", "value": "1/2"}\'')
    g.add_argument("--file", help="take the gauge from a problem file")
    g.add_argument("--example-depth", type=int, help="use the example gauge at this depth")
    g.add_argument("--mode", choices=("exact", "float"), default="exact")
    g.add_argument("--probes", help="tau:N | range:a:b[:step] | comma list")
    g.add_argument("--eps", default="pow2:1:10")
    g.add_argument("--t0", default="0")
    g.add_argument("--deltas", help="window widths, e.g. pow2:0:30")
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.set_defaults(func=cmd_check_gauge)

    n = sub.add_parser("nadler-constant", help="sup of H(Tx,Ty)/d(x,y) over point pairs")
    n.add_argument("file")
    n.add_argument("--pairs", help="x:y,x:y,... (default: all pairs)")
    n.set_defaults(func=cmd_nadler_constant)

    e = sub.add_parser("export-example", help="write the depth-N example as a problem file")
    e.add_argument("--depth", type=int, default=6)
    e.add_argument("--x0", type=int, default=1)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProblemFileError as exc:
        print(f"mvfix: invalid problem input, {exc}", file=sys.stderr)
    except (InputError, MvfixError, ValueError, OSError) as exc:
        print(f"mvfix: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
