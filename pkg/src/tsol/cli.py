"""Command-line driver: `tsol <command> ...`.

Exit status: 0 on success, 2 on domain errors (e.g. patterns not in the
same orbit), 1 on I/O or parse problems.  Logging level comes from the
TSOL_LOG environment variable (error, warn, info, debug).
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from . import explorer, filling, normalform, pathfinder, tep
from .core import (
    Point,
    line_pattern,
    parse_pattern,
    render_ascii,
    render_pattern,
)
from .errors import (
    BadParams,
    BadSize,
    CapExceeded,
    IllegalMove,
    NotABasis,
    NotAFilling,
    NotSameOrbit,
    NotSameTriangle,
    NotTep,
    ParseError,
    TooLarge,
    TsolError,
)

log = logging.getLogger("tsol")

DOMAIN_ERRORS = (
    BadParams,
    BadSize,
    CapExceeded,
    IllegalMove,
    NotABasis,
    NotAFilling,
    NotSameOrbit,
    NotSameTriangle,
    NotTep,
    TooLarge,
)


def _setup_logging():
    level = os.environ.get("TSOL_LOG", "warn").lower()
    levels = {"error": logging.ERROR, "warn": logging.WARNING,
              "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _emit(args, text: str):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _input_pattern(args):
    """Pattern from -i/--in, --line n, or --pnk n k (anchored at the origin).
    With --seed the pattern is scrambled by a seeded random walk."""
    given = [x for x in (args.infile, args.line, args.pnk) if x is not None]
    if len(given) != 1:
        raise ParseError("exactly one of -i/--in, --line, --pnk is required")
    if args.infile is not None:
        P = parse_pattern(_read_text(args.infile))
    elif args.line is not None:
        P = line_pattern(args.line)
    else:
        n, k = args.pnk
        P = normalform.line_with_excess(n, k)
    if getattr(args, "seed", None) is not None:
        P = explorer.random_walk(P, 12 * max(len(P), 1) ** 2, seed=args.seed)
    return P


def _add_pattern_source(sub):
    sub.add_argument("-i", "--in", dest="infile", metavar="FILE", default=None,
                     help="pattern in .pts format ('-' for stdin)")
    sub.add_argument("--line", type=int, metavar="N", default=None,
                     help="use the horizontal line of length N")
    sub.add_argument("--pnk", type=int, nargs=2, metavar=("N", "K"), default=None,
                     help="use the canonical line-with-excess shape")
    sub.add_argument("--seed", type=int, default=None, metavar="U64",
                     help="scramble the input by a seeded random walk")


def cmd_fill(args) -> int:
    P = _input_pattern(args)
    filled = filling.fill(P)
    _emit(args, render_ascii(filled) if args.ascii else render_pattern(filled))
    return 0


def cmd_normal_form(args) -> int:
    P = _input_pattern(args)
    _emit(args, normalform.render_normal_form(normalform.normal_form(P)))
    return 0


def cmd_path(args) -> int:
    P = parse_pattern(_read_text(args.infile))
    Q = parse_pattern(_read_text(args.other))
    seq = pathfinder.path_between(P, Q)
    _emit(args, pathfinder.render_move_sequence(seq))
    return 0


def cmd_normalize_path(args) -> int:
    P = _input_pattern(args)
    seq = pathfinder.to_normal_form(P)
    _emit(args, pathfinder.render_move_sequence(seq))
    return 0


def cmd_orbit(args) -> int:
    P = _input_pattern(args)
    graph = explorer.orbit_bfs(P, vertex_cap=args.cap)
    if args.count:
        _emit(args, f"{graph.size}\n")
        return 0
    out = []
    for word in sorted(graph.states):
        cells = render_pattern(graph.decode(word)).strip().replace("\n", "; ")
        out.append(cells)
    _emit(args, "\n".join(out) + "\n")
    return 0


def cmd_diameter(args) -> int:
    P = _input_pattern(args)
    _emit(args, f"{explorer.diameter(P, vertex_cap=args.cap)}\n")
    return 0


def cmd_census(args) -> int:
    rows = []
    for n in range(args.min_n, args.max_n + 1):
        report = explorer.check_orbit_size_bounds(n, vertex_cap=args.cap)
        diam = (
            explorer.diameter(line_pattern(n), vertex_cap=args.cap)
            if n <= args.diameter_max
            else None
        )
        rows.append(
            {
                "n": n,
                "orbit_size": report.orbit_size,
                "lower_bound_3nfact": report.lower_bound,
                "upper_bound_expr": None if math.isnan(report.upper_bound_expr) else float(report.upper_bound_expr),
                "diameter": diam,
            }
        )
        if not report.lower_ok:
            raise TsolError(f"lower bound violated at n={n}")
    if args.json:
        _emit(args, json.dumps(rows, indent=2) + "\n")
    else:
        lines = ["n, orbit_size, lower_bound_3nfact, upper_bound_expr, diameter"]
        for r in rows:
            ub = "-" if r["upper_bound_expr"] is None else f"{r['upper_bound_expr']:.4f}"
            dm = "-" if r["diameter"] is None else str(r["diameter"])
            lines.append(f"{r['n']}, {r['orbit_size']}, {r['lower_bound_3nfact']}, {ub}, {dm}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_excess_sets(args) -> int:
    P = _input_pattern(args)
    if args.maximal:
        sets = filling.maximal_excess_sets(P)
    else:
        sets = filling.excess_sets(P, max_card=args.max_card)
    lines = []
    for U in sets:
        cells = " ".join(f"{p.x},{p.y}" for p in sorted(U, key=lambda p: (-p.y, p.x)))
        lines.append(cells if cells else "(empty)")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _load_family(args) -> tep.TepFamily:
    if args.rule:
        return tep.parse_rule_spec(args.rule)
    if args.family:
        return tep.parse_family(_read_text(args.family))
    raise ParseError("one of --rule or --family is required")


def cmd_tep_complete(args) -> int:
    fam = _load_family(args)
    values = tep.parse_assignment(_read_text(args.infile))
    full = tep.complete(fam, values, args.n)
    _emit(args, tep.render_assignment(full))
    return 0


def cmd_tep_compile(args) -> int:
    fam = _load_family(args)
    P = parse_pattern(_read_text(args.infile))
    Q = parse_pattern(_read_text(args.other))
    compiled = tep.compile_basis_change(fam, P, Q, args.n)
    lines = [
        "source " + " ".join(f"{c.x},{c.y}" for c in compiled.source_order),
        "target " + " ".join(f"{c.x},{c.y}" for c in compiled.target_order),
    ]
    for perm in compiled.permutations:
        pairs = ";".join(f"{a},{b}->{c},{d}" for (a, b), (c, d) in perm.table)
        lines.append(f"perm {perm.i} {perm.j} {pairs}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_serve(args) -> int:
    from .server import serve

    serve(port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tsol", description="triangle solitaire workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fill", help="filling closure of a pattern")
    _add_pattern_source(p)
    p.add_argument("--ascii", action="store_true", help="render as ASCII art")
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("normal-form", help="canonical orbit representative")
    _add_pattern_source(p)
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("path", help="move sequence between two same-orbit patterns")
    p.add_argument("-i", "--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("-o", dest="other", required=True, metavar="FILE",
                   help="the destination pattern (.pts)")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("normalize-path", help="move sequence to the normal form")
    _add_pattern_source(p)
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_normalize_path)

    p = sub.add_parser("orbit", help="breadth-first exploration of an orbit")
    _add_pattern_source(p)
    p.add_argument("--count", action="store_true", help="print only the orbit size")
    p.add_argument("--cap", type=int, default=explorer.DEFAULT_VERTEX_CAP)
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("diameter", help="exact diameter of an orbit graph")
    _add_pattern_source(p)
    p.add_argument("--cap", type=int, default=explorer.DEFAULT_VERTEX_CAP)
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("census", help="orbit sizes vs. bounds, as text or JSON")
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--diameter-max", type=int, default=5,
                   help="compute diameters only up to this n")
    p.add_argument("--cap", type=int, default=explorer.DEFAULT_VERTEX_CAP)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("excess-sets", help="enumerate excess sets of a pattern")
    _add_pattern_source(p)
    p.add_argument("--max-card", type=int, default=None)
    p.add_argument("--maximal", action="store_true", help="only inclusion-maximal sets")
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_excess_sets)

    p = sub.add_parser("tep-complete", help="complete a partial assignment on a triangle")
    p.add_argument("-i", "--in", dest="infile", required=True, metavar="FILE",
                   help="assignment file: '<x> <y> <symbol>' lines")
    p.add_argument("-n", type=int, required=True, help="triangle size")
    p.add_argument("--rule", help="rule spec: xor | add-mod-<m> | affine u v c m")
    p.add_argument("--family", help="family file (alternative to --rule)")
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_tep_complete)

    p = sub.add_parser("tep-compile", help="basis change as two-cell permutations")
    p.add_argument("-i", "--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("-o", dest="other", required=True, metavar="FILE",
                   help="the destination basis (.pts)")
    p.add_argument("-n", type=int, required=True, help="triangle size")
    p.add_argument("--rule", help="rule spec: xor | add-mod-<m> | affine u v c m")
    p.add_argument("--family", help="family file (alternative to --rule)")
    p.add_argument("--out", dest="out", help="output file (default stdout)")
    p.set_defaults(func=cmd_tep_compile)

    p = sub.add_parser("serve", help="serve the JSON API and the browser UI")
    p.add_argument("--port", type=int, default=8023)
    p.set_defaults(func=cmd_serve)

    return ap


def main(argv=None) -> int:
    _setup_logging()
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except NotSameOrbit:
        print("error: not in the same orbit", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
