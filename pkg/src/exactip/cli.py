"""Batch front door: solve, analyze, hnf, bounds, gen.

Exit codes: 0 optimal (or informational success), 2 infeasible, 3 unbounded,
4 invalid input or precondition failure, 5 internal invariant violation.
Result documents go to stdout (or --output); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
import time

from .decomposition import solve_standard
from .dp import Status, dp_solve, papadimitriou_bound, small_component_bound
from .errors import (
    InstanceFormatError,
    InvariantError,
    NodeLimitExceeded,
    PipelinePreconditionError,
)
from .inequality import (
    InequalityIP,
    analyze,
    row_count_threshold,
    solve_inequality,
    transformed_entry_bound,
)
from .instances import (
    dump,
    encode_int,
    instance_document,
    load_instance,
    result_document,
)
from .linalg import DimensionError, SingularMatrixError, hnf
from .mixed import MixedIP, solve_mixed
from .oracle import (
    GenSpec,
    brute_inequality,
    brute_mixed,
    brute_standard,
    generate,
    vertex_box,
)

EXIT_BY_STATUS = {Status.OPTIMAL: 0, Status.INFEASIBLE: 2, Status.UNBOUNDED: 3}


def _build_parser():
    parser = argparse.ArgumentParser(prog="exactip")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    p.add_argument("--method", choices=("decomp", "dp", "oracle"), default="decomp")
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--box", type=int, default=None)
    p.add_argument("--output", default=None)

    p = sub.add_parser("analyze", help="pipeline precondition report")
    p.add_argument("file")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--output", default=None)

    p = sub.add_parser("hnf", help="Hermite normal form of the instance matrix")
    p.add_argument("file")
    p.add_argument("--output", default=None)

    p = sub.add_parser("bounds", help="bound formulas for a given delta")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--output", default=None)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("--form", choices=("standard", "inequality", "mixed"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--output", default=None)
    return parser


def _cmd_solve(args):
    instance, form, doc_delta, doc_box = load_instance(args.file)
    delta = args.delta if args.delta is not None else doc_delta
    box = args.box if args.box is not None else doc_box
    start = time.perf_counter()
    extra = {}
    if args.method == "decomp":
        if form == "standard":
            solution = solve_standard(instance)
        elif form == "mixed":
            solution = solve_mixed(instance)
        else:
            if delta is None:
                raise InstanceFormatError("inequality solve needs --delta")
            solution = solve_inequality(instance, delta)
            extra["delta"] = delta
    elif args.method == "dp":
        if form != "standard":
            raise InstanceFormatError("--method dp only applies to standard form")
        bound = papadimitriou_bound(instance)
        solution = dp_solve(instance, bound)
        extra["var_bound"] = encode_int(bound)
    else:
        if form == "standard":
            if box is None:
                raise InstanceFormatError("oracle solve needs --box")
            solution = brute_standard(instance, box)
        elif form == "mixed":
            if box is None:
                raise InstanceFormatError("oracle solve needs --box")
            solution = brute_mixed(instance, box)
        else:
            rng = (-box, box) if box is not None else vertex_box(instance)
            solution = brute_inequality(instance, rng)
            extra["box_range"] = list(rng)
    elapsed = time.perf_counter() - start
    dump(result_document(solution, args.method, elapsed, extra), args.output)
    return EXIT_BY_STATUS[solution.status]


def _cmd_analyze(args):
    instance, form, _, _ = load_instance(args.file)
    if form != "inequality":
        raise InstanceFormatError("analyze applies to inequality form")
    report = analyze(instance, args.delta)
    dump(
        {
            "rank": report.rank,
            "delta_max": encode_int(report.delta_max),
            "has_singular_submatrix": report.has_singular_submatrix,
            "k": report.k,
            "entry_bound_ok": report.entry_bound_ok,
            "row_count_ok": report.row_count_ok,
            "delta_ok": report.delta_max <= args.delta,
            "delta": args.delta,
        },
        args.output,
    )
    return 0


def _cmd_hnf(args):
    instance, _, _, _ = load_instance(args.file)
    result = hnf(instance.a)
    dump(
        {
            "H": [[encode_int(v) for v in row] for row in result.h.data],
            "U": [[encode_int(v) for v in row] for row in result.u.data],
            "row_permutation": list(result.applied_row_permutation),
        },
        args.output,
    )
    return 0


def _cmd_bounds(args):
    delta = args.delta
    if delta < 1:
        raise InstanceFormatError("--delta must be >= 1")
    dump(
        {
            "delta": delta,
            "entry_bound": encode_int(transformed_entry_bound(delta)),
            "row_count_threshold": encode_int(row_count_threshold(delta)),
            "small_component_bound": {
                f"m={m}": encode_int(small_component_bound(m, delta)) for m in (1, 2, 3)
            },
        },
        args.output,
    )
    return 0


def _cmd_gen(args):
    spec = GenSpec(form=args.form, n=args.n, m=args.m, delta=args.delta, seed=args.seed, l=args.l)
    result = generate(spec)
    delta = args.delta if args.form == "inequality" else None
    doc = instance_document(
        result.instance,
        delta=delta,
        meta={"seed": args.seed, "attempts": result.attempts},
    )
    dump(doc, args.output)
    return 0


def main(argv=None):
    args = _build_parser().parse_args(argv)
    handlers = {
        "solve": _cmd_solve,
        "analyze": _cmd_analyze,
        "hnf": _cmd_hnf,
        "bounds": _cmd_bounds,
        "gen": _cmd_gen,
    }
    try:
        return handlers[args.command](args)
    except (
        InstanceFormatError,
        PipelinePreconditionError,
        DimensionError,
        SingularMatrixError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (InvariantError, NodeLimitExceeded, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
