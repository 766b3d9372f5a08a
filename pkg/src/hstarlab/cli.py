"""Command-line entry point: ``hstarlab <command> ...``.

Exit status is 0 when every reported check passes, 1 when a mathematical
check fails and 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import checks, constructions, harness, io
from .ehrhart import hstar, hstar_group, hstar_interp, hstar_triangulated
from .linalg import lattice_from_generators
from .polytope import LatticePolytope, count_interior, count_points, facets, is_simplex
from .report import CheckReport, format_reports

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _shard(text: str) -> tuple[int, int]:
    try:
        i, n = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must look like i/n, got {text!r}") from None
    if not 0 <= i < n:
        raise argparse.ArgumentTypeError(f"shard index out of range: {text}")
    return i, n


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _emit_polytope(p: LatticePolytope, args, out) -> None:
    text = io.dumps(p, json_format=getattr(args, "json", False))
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def _ambient_spanning(p: LatticePolytope, ptilde: LatticePolytope) -> LatticePolytope:
    """Express the spanning lattice in the ambient coordinates of the file."""
    if p.refinement is None or ptilde is p:
        return ptilde
    outer = p.refinement
    inner = ptilde.refinement
    origin = outer.point([int(x) for x in inner.base_point])
    zero = outer.point([0] * p.ambient_dim)
    gens = []
    for row in inner.basis:
        img = outer.point([Fraction(x) for x in row])
        gens.append([a - b for a, b in zip(img, zero)])
    return LatticePolytope(ptilde.vertices, lattice_from_generators(origin, gens))


# -- commands ----------------------------------------------------------------


def cmd_hstar(args, out):
    p = io.load(args.file)
    engines = {
        "interp": [("interp", hstar_interp)],
        "group": [("group", hstar_group if is_simplex(p) else hstar_triangulated)],
        "both": [
            ("group", hstar_group if is_simplex(p) else hstar_triangulated),
            ("interp", hstar_interp),
        ],
        "auto": [("auto", hstar)],
    }[args.engine]
    results = []
    for name, fn in engines:
        h = fn(p)
        results.append(h)
        out.write(f"{h.polynomial()}\n" if len(engines) == 1 else f"{name}: {h.polynomial()}\n")
    if len(results) > 1:
        agree = all(r == results[0] for r in results)
        out.write(f"agree: {'yes' if agree else 'no'}\n")
        return EXIT_OK if agree else EXIT_FAIL
    return EXIT_OK


def cmd_count(args, out):
    p = io.load(args.file)
    fn = count_interior if args.interior else count_points
    out.write(f"{fn(p, args.dilate)}\n")
    return EXIT_OK


def cmd_spanning(args, out):
    p = io.load(args.file)
    ptilde, index = constructions.spanning(p)
    h, ht = hstar(p), hstar(ptilde)
    out.write(f"index: {index}\n")
    out.write(f"hstar: {h.polynomial()}\n")
    out.write(f"spanning hstar: {ht.polynomial()}\n")
    if args.output:
        _emit_polytope(_ambient_spanning(p, ptilde), args, out)
    return EXIT_OK


def cmd_facets(args, out):
    p = io.load(args.file)
    for n, b in facets(p):
        out.write(f"{' '.join(map(str, n))} <= {b}\n")
    return EXIT_OK


def cmd_construct(args, out):
    kind = args.kind
    vals = args.args
    try:
        if kind == "pyramid":
            _arity(vals, 1, "pyramid FILE")
            p = constructions.pyramid(io.load(vals[0]))
        elif kind == "join":
            _arity(vals, 2, "join FILE FILE")
            p = constructions.join(io.load(vals[0]), io.load(vals[1]))
        elif kind == "lawrence":
            if not vals:
                raise UsageError("lawrence needs heights")
            p = constructions.lawrence_prism([int(v) for v in vals])
        elif kind == "exceptional":
            _arity(vals, 1, "exceptional D")
            p = constructions.exceptional_simplex(int(vals[0]))
        else:  # bh
            _arity(vals, 2, "bh S B")
            p = constructions.bh_simplex(int(vals[0]), int(vals[1]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_polytope(p, args, out)
    return EXIT_OK


def _arity(vals, n, usage):
    if len(vals) != n:
        raise UsageError(f"usage: construct {usage}")


def cmd_check(args, out):
    p = io.load(args.file)
    name = args.name
    if name == "divisibility":
        report = checks.divisibility_lawrence(p)
    elif name == "main":
        report = checks.main_theorem(p)
    else:
        h = hstar(p)
        report = {
            "scott": lambda: checks.scott_universal(h[1], h[2]),
            "scott2": lambda: checks.scott_dim2(h[1], h[2]),
            "hibi": lambda: checks.hibi_lower(h),
            "stanley": lambda: checks.stanley(h),
            "hkn": lambda: checks.hkn_spanning(h),
        }[name]()
    out.write(format_reports([report]) + "\n")
    return EXIT_OK if report else EXIT_FAIL


def cmd_classify(args, out):
    p = io.load(args.file)
    cls = checks.classify_degree_le1(p)
    out.write(f"{cls}\n")
    return EXIT_OK


def cmd_enumerate(args, out):
    spec = harness.EnumSpec(args.dim, args.max_vol, args.shard)
    n = 0
    for p in harness.enumerate_simplices(spec):
        rows = ";".join(" ".join(map(str, v)) for v in p.vertices[1:])
        out.write(f"{rows}\n")
        n += 1
    out.write(f"# {n} simplices\n")
    return EXIT_OK


def cmd_sweep(args, out):
    if args.shard != (0, 1):
        summary = harness.sweep_main_theorem(harness.EnumSpec(args.dim, args.max_vol, args.shard, args.seed))
    else:
        summary = harness.sweep_parallel(args.dim, args.max_vol, shards=max(args.jobs, 1), jobs=args.jobs)
    reports = [summary.report(f"sweep_dim{args.dim}_vol{args.max_vol}")]
    for verts in summary.violations:
        reports.append(CheckReport("scott_violation", False, (("vertices", verts),)))
    for name, verts in summary.inequality_violations:
        reports.append(CheckReport(name, False, (("vertices", verts),)))
    out.write(format_reports(reports) + "\n")
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_verify_paper(args, out):
    reports = harness.verify_paper_examples()
    out.write(format_reports(reports) + "\n")
    return EXIT_OK if all(reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hstarlab", description="h*-vectors of lattice polytopes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hstar", help="h*-polynomial of a polytope file")
    p.add_argument("file")
    p.add_argument("--engine", choices=("interp", "group", "both", "auto"), default="auto")
    p.set_defaults(func=cmd_hstar)

    p = sub.add_parser("count", help="lattice points in a dilation")
    p.add_argument("file")
    p.add_argument("--dilate", type=_nonneg, default=1)
    p.add_argument("--interior", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("spanning", help="spanning lattice index and h*")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write the spanning polytope here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spanning)

    p = sub.add_parser("facets", help="facet inequalities n.x <= b")
    p.add_argument("file")
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("construct", help="build a polytope and print it")
    p.add_argument("kind", choices=("pyramid", "join", "lawrence", "exceptional", "bh"))
    p.add_argument("args", nargs="*")
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="run one inequality check")
    p.add_argument("name", choices=("scott", "scott2", "hibi", "stanley", "hkn", "main", "divisibility"))
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="classify a polytope of degree at most one")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    for name, func in (("enumerate", cmd_enumerate), ("sweep", cmd_sweep)):
        p = sub.add_parser(name, help=f"{name} Hermite-form simplices")
        p.add_argument("--dim", type=_positive, required=True)
        p.add_argument("--max-vol", type=_positive, required=True)
        p.add_argument("--shard", type=_shard, default=(0, 1))
        p.add_argument("--seed", type=int, default=0)
        if name == "sweep":
            p.add_argument("--jobs", type=_positive, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("verify-paper", help="recompute the worked examples")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_paper)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, io.PolytopeFormatError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except checks.ClassificationFailed as exc:
        err.write(f"classification failed: {exc}\n")
        return EXIT_FAIL
    except ValueError as exc:
        # invalid polytopes and lattices surface here
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
