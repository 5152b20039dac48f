"""Command-line interface.

Subcommands: dim, attract, boxcount, render, graph, dual, verify.  All
commands are deterministic given their flags.  Exit codes: 0 success,
1 I/O / parse / usage error, 2 mathematical hypothesis violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .attractor import (
    box_count,
    box_dim_estimate,
    dual_iterate,
    iterate_cover,
    standard_seeds,
)
from .dimension import HypothesisViolation, analyze, hausdorff_bounds
from .gifs import FIXTURES, GifsGraph, SpecFormatError, parse_spec
from .padic import padic_zero
from .render import BOUNDARY_COLOR, ImageSpec, emit_dot, render_cover
from .space import Box
from . import verify as verify_mod

USAGE_EXIT = 1
MATH_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems belong to the parse-error bucket
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _add_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("spec", nargs="?", help="GIFS spec file (JSON)")
    p.add_argument("--fixture", choices=sorted(FIXTURES),
                   help="built-in example system")
    p.add_argument("--precision", type=int, default=64,
                   help="p-adic digits for fixture constants")


def _load_graph(args) -> GifsGraph:
    if args.fixture and args.spec:
        raise SpecFormatError("give either a spec file or --fixture, not both")
    if args.fixture:
        return FIXTURES[args.fixture](args.precision)
    if not args.spec:
        raise SpecFormatError("missing input: give a spec file or --fixture")
    with open(args.spec, "r", encoding="utf-8") as fh:
        return parse_spec(fh.read())


def _write_out(path: str | None, data, binary: bool = False) -> None:
    if path is None or path == "-":
        if binary:
            sys.stdout.buffer.write(data)
        else:
            sys.stdout.write(data)
        return
    mode = "wb" if binary else "w"
    with open(path, mode) as fh:
        fh.write(data)


def _parse_resolutions(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",")]


def _parse_window(text: str, g: GifsGraph) -> Box:
    """x0:x1:m with one real interval and one ball exponent per coordinate,
    comma-separated groups for r > 1 or k > 1."""
    sig = g.signature
    parts = text.split(":")
    if len(parts) != 2 * sig.r + sig.k:
        raise SpecFormatError(
            f"window needs {2 * sig.r + sig.k} colon-separated values "
            f"(x0:x1 per real axis, then one exponent per prime)")
    vals = [float(v) for v in parts]
    intervals = tuple((vals[2 * i], vals[2 * i + 1]) for i in range(sig.r))
    balls = tuple((padic_zero(p), int(vals[2 * sig.r + t]))
                  for t, p in enumerate(sig.primes))
    return Box(intervals, (), balls)


# -- subcommands ---------------------------------------------------------------


def cmd_dim(args) -> int:
    g = _load_graph(args)
    report = analyze(g, method=args.method, tol=args.tol, l_max=args.lmax,
                     assert_disjoint=args.assert_disjoint)
    if args.json:
        print(report.to_json())
    else:
        print(report.to_table())
        if args.assert_disjoint:
            lower, upper = hausdorff_bounds(g, assert_disjoint=True,
                                            tol=args.tol)
            print(f"hausdorff_lower       {lower:.9f}")
            print(f"hausdorff_upper       {upper:.9f}")
    return 0


def cmd_graph(args) -> int:
    g = _load_graph(args)
    _write_out(args.out, emit_dot(g))
    return 0


def _cover_csv(cover) -> str:
    g = cover.graph
    sig = g.signature
    buf = io.StringIO()
    writer = csv.writer(buf)
    header = ["vertex"]
    header += [f"re{i}_{end}" for i in range(sig.r) for end in ("lo", "hi")]
    header += [f"c{i}_{part}_{end}" for i in range(sig.s)
               for part in ("re", "im") for end in ("lo", "hi")]
    header += [f"p{p}_{what}" for p in sig.primes
               for what in ("center", "exponent")]
    writer.writerow(header)
    for vertex, boxes in cover.boxes.items():
        for box in boxes:
            row = [vertex]
            for lo, hi in box.intervals:
                row += [repr(float(lo)), repr(float(hi))]
            for (x0, x1), (y0, y1) in box.rects:
                row += [repr(float(x0)), repr(float(x1)),
                        repr(float(y0)), repr(float(y1))]
            for center, m in box.balls:
                row += [center.digit_string(), str(m)]
            writer.writerow(row)
    return buf.getvalue()


def cmd_attract(args) -> int:
    g = _load_graph(args)
    cover = iterate_cover(g, standard_seeds(g, args.seed_radius), args.depth)
    _write_out(args.out, _cover_csv(cover))
    return 0


def cmd_boxcount(args) -> int:
    g = _load_graph(args)
    cover = iterate_cover(g, standard_seeds(g, args.seed_radius), args.depth)
    if args.vertex:
        if args.vertex not in cover.boxes:
            raise SpecFormatError(f"unknown vertex {args.vertex!r}")
        boxes = cover.boxes[args.vertex]
    else:
        boxes = cover.all_boxes()
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["m", "N", "slope_so_far"])
    counts: list[tuple[int, int]] = []
    for m in _parse_resolutions(args.resolution):
        counts.append((m, box_count(boxes, m)))
        slope = ("" if len(counts) < 2
                 else f"{box_dim_estimate(counts)[0]:.9f}")
        writer.writerow([counts[-1][0], counts[-1][1], slope])
    _write_out(args.out, buf.getvalue())
    return 0


def cmd_render(args) -> int:
    g = _load_graph(args)
    cover = iterate_cover(g, standard_seeds(g, args.seed_radius), args.depth)
    spec = ImageSpec(width=args.width, height=args.height,
                     x_range=(args.xmin, args.xmax), base=args.base)
    layers = [(cover, (128, 128, 128))]
    if args.fixture == "main" and not args.no_boundary:
        gb = FIXTURES["boundary"](args.precision)
        layers.append((iterate_cover(gb, standard_seeds(gb, args.seed_radius),
                                     args.depth), BOUNDARY_COLOR))
    _write_out(args.out, render_cover(layers, spec), binary=True)
    return 0


def cmd_dual(args) -> int:
    g = _load_graph(args)
    window = _parse_window(args.window, g)
    pts = dual_iterate(g, window, max_iter=args.max_iter,
                       max_points=args.max_points)
    buf = io.StringIO()
    writer = csv.writer(buf)
    sig = g.signature
    header = ["vertex"]
    for i in range(sig.r + sig.k):
        header += [f"x{i}_a", f"x{i}_b", f"x{i}_c", f"x{i}_d"]
    writer.writerow(header)
    for vertex in g.vertices:
        for pt in sorted(pts.points[vertex],
                         key=lambda q: [(c.a, c.b, c.c) for c in q]):
            row = [vertex]
            for coord in pt:
                row += [coord.a, coord.b, coord.c, coord.d]
            writer.writerow(row)
    _write_out(args.out, buf.getvalue())
    print(f"stabilized: {pts.stabilized} after {pts.iterations} iterations; "
          f"counts: {pts.counts()}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    only = set(args.only.split(",")) if args.only else None
    if only:
        known = {name for name, _ in verify_mod.CRITERIA}
        bad = only - known
        if bad:
            raise SpecFormatError(f"unknown criteria: {sorted(bad)}")
    failures = verify_mod.run(only)
    print(f"{'OK' if failures == 0 else 'FAILED'}: {failures} criterion "
          f"failure(s)")
    return 0 if failures == 0 else MATH_EXIT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mixedifs",
                     description="graph-directed IFS toolkit for mixed "
                                 "real/p-adic spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="affinity / lower affinity dimension")
    _add_source_args(p)
    p.add_argument("--method", choices=("auto", "closed", "spectral", "partial"),
                   default="auto")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--lmax", type=int, default=8)
    p.add_argument("--assert-disjoint", action="store_true",
                   help="assert the disjointness hypotheses (not verified) "
                        "to enable the Hausdorff lower bound")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_dim)

    p = sub.add_parser("graph", help="emit the system graph as DOT")
    _add_source_args(p)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("attract", help="box cover of the attractor as CSV")
    _add_source_args(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--seed-radius", type=float, default=2.0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_attract)

    p = sub.add_parser("boxcount", help="grid-cell counts and slope as CSV")
    _add_source_args(p)
    p.add_argument("--depth", type=int, default=9)
    p.add_argument("--resolution", default="4..9",
                   help="m range, e.g. 4..9 or 4,6,8")
    p.add_argument("--vertex", help="count one vertex set (default: union)")
    p.add_argument("--seed-radius", type=float, default=2.0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_boxcount)

    p = sub.add_parser("render", help="raster image (PPM) of the covers")
    _add_source_args(p)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--width", type=int, default=768)
    p.add_argument("--height", type=int, default=512)
    p.add_argument("--xmin", type=float, default=-2.0)
    p.add_argument("--xmax", type=float, default=2.0)
    p.add_argument("--base", type=int, default=2,
                   help="digit embedding base (p fills, 2p-1 leaves gaps)")
    p.add_argument("--no-boundary", action="store_true",
                   help="skip the boundary overlay on the main fixture")
    p.add_argument("--seed-radius", type=float, default=2.0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("dual", help="dual point-set iteration, exact CSV")
    _add_source_args(p)
    p.add_argument("--window", required=True,
                   help="x0:x1:m (real interval, ball exponent)")
    p.add_argument("--max-iter", type=int, default=64)
    p.add_argument("--max-points", type=int, default=200_000)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--only", help="comma-separated criterion names")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except HypothesisViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MATH_EXIT
    except (SpecFormatError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    raise SystemExit(main())
