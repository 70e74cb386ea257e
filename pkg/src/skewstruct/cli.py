"""Command-line front door.

Subcommands: generic, analyze, sample, mc, linearize, codim, closure.
Exit codes: 0 success, 1 validation failure, 2 inconclusive closure search,
3 numeric backend failure. All randomness flows from --seed flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .blocks import BlockList
from .codimension import (
    codim_poly_generic,
    pencil_codim_reports,
    poly_codim_reports,
)
from .degeneration import closure_reachable
from .eigenstructure import analyze
from .errors import SkewstructError
from .exact import NEG_INF
from .fileio import (
    FileFormatError,
    dump_json,
    polynomial_to_dict,
    read_polynomial,
    write_polynomial,
)
from .generic import generic_pencil_structure, generic_poly_structure
from .linearize import build_linearization, pad_grade
from .sampling import (
    DEFAULT_TOL,
    SampleSpec,
    analyze_float,
    monte_carlo_genericity,
    sample_bounded_rank,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INCONCLUSIVE = 2
EXIT_NUMERIC = 3


def _descending(values) -> str:
    return ", ".join(str(v) for v in sorted(values, reverse=True))


def _format_skew_blocks(structure) -> str:
    # display order: singular part first (M blocks, largest first), then the
    # infinite part (K), then finite eigenvalue blocks (H)
    order = {"M": 0, "K": 1, "H": 2}
    blocks = sorted(structure.blocks, key=lambda b: (order[b.kind], -b.index))
    return " ⊕ ".join(str(b) for b in blocks)


def cmd_generic(args) -> int:
    if args.pencil:
        if args.n is None or args.w is None:
            raise SkewstructError("--pencil needs --n and --w")
        structure = generic_pencil_structure(args.n, args.w, args.r)
        if args.json:
            print(dump_json(structure.to_json_dict()), end="")
        else:
            print(_format_skew_blocks(structure))
        return EXIT_OK
    if args.m is None or args.d is None:
        raise SkewstructError("needs --m and --d (or --pencil with --n/--w)")
    structure = generic_poly_structure(args.m, args.d, args.r)
    if args.json:
        print(dump_json(structure.to_json_dict()), end="")
    else:
        print(f"size: {args.m}x{args.m}, grade: {args.d}, rank: {structure.rank}")
        print(f"left minimal indices: {_descending(structure.left_minimal)}")
        print(f"right minimal indices: {_descending(structure.right_minimal)}")
        print("elementary divisors: none")
    return EXIT_OK


def cmd_analyze(args) -> int:
    P = read_polynomial(args.file)
    grade = args.grade if args.grade is not None else P.grade
    deg = P.degree
    if deg is not NEG_INF and grade < deg:
        raise SkewstructError(f"--grade {grade} is below the degree {deg}")
    if args.backend == "float":
        try:
            structure = analyze_float(P, grade, args.tol)
        except Exception as exc:  # numeric path is best-effort by contract
            print(f"numeric backend failed: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        data = structure.to_json_dict()
        data["tolerance"] = args.tol
    else:
        data = analyze(P, grade).to_json_dict()
    print(dump_json(data), end="")
    return EXIT_OK


def cmd_sample(args) -> int:
    spec = SampleSpec(m=args.m, d=args.d, r=args.r, coeff_range=args.coeff_range, seed=args.seed)
    P = sample_bounded_rank(spec)
    if args.out:
        write_polynomial(P, args.out)
    else:
        print(dump_json(polynomial_to_dict(P)), end="")
    return EXIT_OK


def cmd_mc(args) -> int:
    spec = SampleSpec(m=args.m, d=args.d, r=args.r, coeff_range=args.coeff_range, seed=args.seed)
    report = monte_carlo_genericity(spec, args.trials)
    print(dump_json(report.to_json_dict()), end="")
    return EXIT_OK


def cmd_linearize(args) -> int:
    P = read_polynomial(args.file)
    if args.pad:
        P = pad_grade(P)
    lin = build_linearization(P)
    if args.out:
        write_polynomial(lin.pencil, args.out)
    else:
        print(dump_json(polynomial_to_dict(lin.pencil)), end="")
    return EXIT_OK


def cmd_codim(args) -> int:
    if args.pencil:
        if args.n is None or args.w is None:
            raise SkewstructError("--pencil needs --n and --w")
        reports = pencil_codim_reports(args.n, args.w, args.r, via_tangent=args.via_tangent)
        agree = len({rep.value for rep in reports}) == 1
        if args.json:
            data = {
                "reports": [dataclasses.asdict(rep) for rep in reports],
                "agree": agree,
            }
            print(dump_json(data), end="")
        else:
            print(reports[0].value)
        return EXIT_OK if agree else EXIT_NUMERIC
    if args.m is None or args.d is None:
        raise SkewstructError("needs --m and --d (or --pencil with --n/--w)")
    if args.via_tangent:
        raise SkewstructError("--via-tangent applies to the --pencil variant")
    reports = poly_codim_reports(args.m, args.d, args.r)
    if args.json:
        print(dump_json({"reports": [dataclasses.asdict(rep) for rep in reports]}), end="")
    else:
        print(codim_poly_generic(args.m, args.d, args.r).value)
    return EXIT_OK


def cmd_closure(args) -> int:
    with open(args.target) as fh:
        target = BlockList.from_json_dict(json.load(fh))
    with open(args.source) as fh:
        source = BlockList.from_json_dict(json.load(fh))
    if target.flavor == "skew":
        from .blocks import skew_to_general

        target = skew_to_general(target)
    if source.flavor == "skew":
        from .blocks import skew_to_general

        source = skew_to_general(source)
    result = closure_reachable(target, source, max_steps=args.max_steps)
    if result.reachable:
        data = {
            "status": result.status,
            "certificate": [app.to_json_dict() for app in result.certificate],
            "states_explored": result.states_explored,
        }
        print(dump_json(data), end="")
        return EXIT_OK
    print(dump_json({"status": result.status, "states_explored": result.states_explored}), end="")
    return EXIT_INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewstruct",
        description="Generic eigenstructures of bounded-rank skew-symmetric "
        "matrix pencils and polynomials: canonical forms, linearizations, "
        "degenerations, codimensions.",
        exit_on_error=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generic", help="print the generic bounded-rank structure")
    g.add_argument("--m", type=int, help="polynomial size")
    g.add_argument("--d", type=int, help="polynomial grade")
    g.add_argument("--r", type=int, required=True, help="half rank (or K-block count with --pencil)")
    g.add_argument("--pencil", action="store_true", help="pencil variant (uses --n/--w)")
    g.add_argument("--n", type=int, help="pencil size (with --pencil)")
    g.add_argument("--w", type=int, help="pencil half rank (with --pencil; note 2w <= n-1, so full-rank pencils are out of scope)")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_generic)

    a = sub.add_parser("analyze", help="complete eigenstructure of a polynomial file")
    a.add_argument("file")
    a.add_argument("--grade", type=int, help="override the declared grade")
    a.add_argument("--backend", choices=("exact", "float"), default="exact")
    a.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative rank tolerance (float backend)")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sample", help="draw a random bounded-rank polynomial")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--coeff-range", type=int, default=9)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="write the polynomial file here instead of stdout")
    s.set_defaults(func=cmd_sample)

    mc = sub.add_parser("mc", help="Monte Carlo genericity experiment")
    mc.add_argument("--m", type=int, required=True)
    mc.add_argument("--d", type=int, required=True)
    mc.add_argument("--r", type=int, required=True)
    mc.add_argument("--trials", type=int, default=100)
    mc.add_argument("--coeff-range", type=int, default=9)
    mc.add_argument("--seed", type=int, default=0)
    mc.set_defaults(func=cmd_mc)

    lin = sub.add_parser("linearize", help="assemble the odd-grade linearization pencil")
    lin.add_argument("file")
    lin.add_argument("--pad", action="store_true", help="raise the grade by one first (for even grades)")
    lin.add_argument("--out")
    lin.set_defaults(func=cmd_linearize)

    c = sub.add_parser("codim", help="orbit codimension of the generic structure")
    c.add_argument("--m", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--pencil", action="store_true")
    c.add_argument("--n", type=int)
    c.add_argument("--w", type=int)
    c.add_argument("--via-tangent", action="store_true", help="also run the exact tangent-rank oracle")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_codim)

    cl = sub.add_parser("closure", help="search for a degeneration path between block lists")
    cl.add_argument("--target", required=True, help="block list JSON file (more generic side)")
    cl.add_argument("--source", required=True, help="block list JSON file (degenerate side)")
    cl.add_argument("--max-steps", type=int, default=None)
    cl.set_defaults(func=cmd_closure)

    return parser


_PARSER = None


def main(argv=None) -> int:
    global _PARSER
    if _PARSER is None:
        _PARSER = build_parser()
    try:
        args = _PARSER.parse_args(argv)
    except argparse.ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExit as exc:
        # argparse exits itself for --help (0) and some usage errors (2);
        # fold the latter into the validation exit code
        return EXIT_OK if exc.code in (0, None) else EXIT_VALIDATION
    try:
        return args.func(args)
    except (SkewstructError, FileFormatError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
