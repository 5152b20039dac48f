"""Attractor approximation and numerical geometry.

Box covers are obtained by pushing per-vertex seed boxes through the edge
maps; counting the dyadic/coset grid cells they touch gives the box-counting
dimension estimate used as a numerical cross-check on the dimension solvers.

The dual point-set iteration runs the expanded system backwards: every edge
u -> w with map x -> T(x) + t contributes points T^-1(y + t) for y in the
set at u to the set at w.  It is carried out in exact quadratic-field
arithmetic; floating point only enters through outward-rounded window
membership tests, so no point is ever lost to rounding.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebraic import QuadraticNumber, sqrt_from_embedding
from .gifs import GifsGraph
from .padic import DEFAULT_PRECISION, PadicNumber, from_rational, padic_zero
from .space import Box, Point, box_contains

_REAL_SLACK = 1e-9          # outward rounding for float window tests
_MAX_COSETS_PER_BALL = 1 << 16


@dataclass(frozen=True)
class BoxCover:
    """Per-vertex box lists after ``depth`` rounds of edge-map images."""

    boxes: dict[str, tuple[Box, ...]]
    depth: int
    graph: GifsGraph

    def all_boxes(self) -> list[Box]:
        return [b for boxes in self.boxes.values() for b in boxes]


def standard_seeds(g: GifsGraph, radius: float = 2.0) -> dict[str, Box]:
    """[-radius, radius] per real/complex axis, Z_p per p-adic coordinate."""
    sig = g.signature
    box = Box(
        intervals=((-radius, radius),) * sig.r,
        rects=(((-radius, radius), (-radius, radius)),) * sig.s,
        balls=tuple((padic_zero(p), 0) for p in sig.primes),
    )
    return {v: box for v in g.vertices}


def iterate_cover(g: GifsGraph, seeds: Mapping[str, Box], depth: int,
                  check_invariance: bool = True) -> BoxCover:
    """Depth-``depth`` cover; the box count at vertex v is the v-th row sum
    of the adjacency matrix power."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    for v in g.vertices:
        if v not in seeds:
            raise ValueError(f"missing seed box for vertex {v!r}")
        if not seeds[v].matches(g.signature):
            raise ValueError(f"seed box for {v!r} does not match the signature")
    if check_invariance:
        for e in g.edges:
            if not box_contains(seeds[e.src], e.map.apply_box(seeds[e.dst]),
                                slack=1e-9):
                warnings.warn(
                    f"seed boxes are not invariant: image of seed({e.dst}) "
                    f"under {e.label!r} leaves seed({e.src})", RuntimeWarning)
                break
    level: dict[str, list[Box]] = {v: [seeds[v]] for v in g.vertices}
    for _ in range(depth):
        nxt: dict[str, list[Box]] = {v: [] for v in g.vertices}
        for e in g.edges:
            nxt[e.src].extend(e.map.apply_box(b) for b in level[e.dst])
        level = nxt
    return BoxCover({v: tuple(bs) for v, bs in level.items()}, depth, g)


# ---------------------------------------------------------------------------
# Grid cells and box counting
# ---------------------------------------------------------------------------


def _interval_cells(lo, hi, m: int) -> range:
    # half-open dyadic cells; a box touching a boundary lands in both
    # neighbours (conservative over-count, keeps upper-bound semantics)
    scale = 1 << m
    return range(math.floor(lo * scale), math.floor(hi * scale) + 1)


def _ball_cells(center: PadicNumber, mb: int, m: int) -> list[Fraction]:
    p = center.prime
    if mb >= m:
        return [center.coset_rep(m)]
    count = p ** (m - mb)
    if count > _MAX_COSETS_PER_BALL:
        raise ValueError(
            f"ball splits into {count} cosets at resolution {m}; "
            "refusing to enumerate")
    rep = center.coset_rep(mb)
    step = p ** mb
    return [rep + t * step for t in range(count)]


def box_cells(box: Box, m: int) -> set[tuple]:
    """Grid cells (dyadic real cells of side 2^-m, cosets of p^m Z_p)
    intersecting the box, as hashable index tuples."""
    axes: list[Iterable] = []
    for lo, hi in box.intervals:
        axes.append(_interval_cells(lo, hi, m))
    for (x0, x1), (y0, y1) in box.rects:
        axes.append(_interval_cells(x0, x1, m))
        axes.append(_interval_cells(y0, y1, m))
    for center, mb in box.balls:
        axes.append(_ball_cells(center, mb, m))
    return set(itertools.product(*axes))


def _as_box_iterable(source) -> Iterable[Box]:
    if isinstance(source, BoxCover):
        return source.all_boxes()
    if isinstance(source, Box):
        return [source]
    return source


def cell_set(source, m: int) -> set[tuple]:
    cells: set[tuple] = set()
    for box in _as_box_iterable(source):
        cells |= box_cells(box, m)
    return cells


def box_count(source, m: int) -> int:
    """N(m): number of distinct grid cells the boxes intersect.  Invariant
    under reordering and duplication of the input."""
    return len(cell_set(source, m))


def box_dim_estimate(counts: Sequence[tuple[int, int]]) -> tuple[float, float]:
    """Least-squares slope of log N against m*log 2; returns (slope, rms
    residual of the fit in log-space)."""
    if len(counts) < 2:
        raise ValueError("need at least two (m, N) pairs")
    xs = np.array([m * math.log(2) for m, _ in counts])
    ys = np.array([math.log(n) for _, n in counts])
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
    return float(slope), residual


def overlap_fraction(source_a, source_b, m: int) -> float:
    """Shared cells of a and b at resolution m, as a fraction of a's cells."""
    cells_a = cell_set(source_a, m)
    cells_b = cell_set(source_b, m)
    if not cells_a:
        return 0.0
    return len(cells_a & cells_b) / len(cells_a)


# ---------------------------------------------------------------------------
# Exact embeddings for point sets
# ---------------------------------------------------------------------------


class ExactEmbedder:
    """Numeric embeddings of exact coordinate tuples, using the p-adic
    square-root branches implied by a graph's own edge data."""

    def __init__(self, g: GifsGraph, precision: int = DEFAULT_PRECISION):
        if g.signature.s != 0:
            raise ValueError("exact embeddings support real/p-adic spaces only")
        self.sig = g.signature
        self.precision = precision
        self.roots: dict[tuple[int, int], PadicNumber] = {}
        r = self.sig.r
        for e in g.edges:
            for part, numeric in ((e.map.linear.exact, e.map.linear.padics),
                                  (e.map.translate.exact, e.map.translate.padics)):
                if part is None:
                    continue
                for t, p in enumerate(self.sig.primes):
                    qn = part[r + t]
                    if qn is None or qn.b == 0 or numeric[t].is_zero:
                        continue
                    key = (p, qn.d)
                    if key not in self.roots:
                        self.roots[key] = sqrt_from_embedding(qn, numeric[t])

    def embed_padic(self, x: QuadraticNumber, p: int) -> PadicNumber:
        if x.b == 0:
            return from_rational(x.a, x.c, p, self.precision)
        root = self.roots.get((p, x.d))
        if root is None:
            raise ValueError(
                f"graph edges do not determine sqrt({x.d}) in Q_{p}")
        return x.embed_padic_with_root(root)

    def embed_point(self, coords: Sequence[QuadraticNumber]) -> Point:
        r = self.sig.r
        reals = tuple(c.embed_real() for c in coords[:r])
        padics = tuple(self.embed_padic(c, p)
                       for c, p in zip(coords[r:], self.sig.primes))
        return Point(reals, (), padics, exact=tuple(coords))


# ---------------------------------------------------------------------------
# Dual point-set iteration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointSetPair:
    """Exact per-vertex point sets, restricted to a window.  ``stabilized``
    certifies the sets are closed under one more dual iteration inside the
    window."""

    points: dict[str, frozenset[tuple[QuadraticNumber, ...]]]
    window: Box
    iterations: int
    stabilized: bool

    def counts(self) -> dict[str, int]:
        return {v: len(pts) for v, pts in self.points.items()}


def _edge_exact(e) -> tuple[tuple[QuadraticNumber, ...], tuple[QuadraticNumber, ...]]:
    lin, tr = e.map.linear.exact, e.map.translate.exact
    if lin is None or tr is None or any(v is None for v in lin) \
            or any(v is None for v in tr):
        raise ValueError(
            f"edge {e.label!r} lacks exact coefficients; build the graph "
            "from a spec with named constants")
    return tuple(lin), tuple(tr)


def _retention_window(g: GifsGraph, window: Box) -> Box:
    """Grow the window to a box W' with, for every edge, T(W') - t inside
    W': any chain of dual images that ends inside the window then stays
    inside W' the whole way, so discarding points outside W' loses nothing."""
    sig = g.signature
    reals = [(min(float(lo), 0.0), max(float(hi), 0.0))
             for lo, hi in window.intervals]
    balls = []
    for c, m in window.balls:
        # the hull must contain the seed point 0
        balls.append((c, m if c.is_zero else min(m, c.valuation)))
    edge_data = []
    for e in g.edges:
        lin, tr = _edge_exact(e)
        edge_data.append(([v.embed_real() for v in lin[:sig.r]],
                          [v.embed_real() for v in tr[:sig.r]],
                          e.map.linear.padics, e.map.translate.padics))
    for _ in range(200):
        changed = False
        for a_re, t_re, a_pad, t_pad in edge_data:
            for i in range(sig.r):
                lo, hi = reals[i]
                img = sorted((a_re[i] * lo - t_re[i], a_re[i] * hi - t_re[i]))
                nlo, nhi = min(lo, img[0]), max(hi, img[1])
                if nlo < lo - 1e-12 or nhi > hi + 1e-12:
                    reals[i] = (nlo, nhi)
                    changed = True
            for t in range(sig.k):
                c0, e0 = balls[t]
                center = a_pad[t] * c0 - t_pad[t]
                exponent = min(e0, e0 + a_pad[t].valuation)
                diff = center - c0
                if not diff.is_zero:
                    exponent = min(exponent, diff.valuation)
                if exponent < e0:
                    balls[t] = (c0, exponent)
                    changed = True
        if not changed:
            break
    return Box(tuple((lo - 1e-9, hi + 1e-9) for lo, hi in reals),
               (), tuple(balls))


def _in_window(point: Point, window: Box) -> bool:
    for x, (lo, hi) in zip(point.reals, window.intervals):
        if x < float(lo) - _REAL_SLACK or x > float(hi) + _REAL_SLACK:
            return False
    for x, (center, m) in zip(point.padics, window.balls):
        diff = x - center
        if not diff.is_zero and diff.valuation < m:
            return False
    return True


def dual_iterate(g: GifsGraph, window: Box, max_iter: int = 64,
                 max_points: int = 200_000,
                 steps: int | None = None) -> PointSetPair:
    """Run the dual (expanding) iteration from {0} per vertex until the
    window-restricted sets reach a fixed point.

    ``steps`` forces an exact number of iterations (no fixed-point check),
    which exposes the intermediate sets.
    """
    sig = g.signature
    if sig.s != 0:
        raise ValueError("dual iteration supports real/p-adic spaces only")
    if not window.matches(sig):
        raise ValueError("window does not match the graph signature")
    exact = {idx: _edge_exact(e) for idx, e in enumerate(g.edges)}
    for lin, _ in exact.values():
        if any(not v for v in lin):
            raise ValueError("dual iteration needs invertible linear parts")
    embedder = ExactEmbedder(g)
    retention = _retention_window(g, window)
    embedded: dict[tuple, Point] = {}

    def embed(pt: tuple) -> Point:
        if pt not in embedded:
            embedded[pt] = embedder.embed_point(pt)
        return embedded[pt]

    some_d = next((v.d for lin, tr in exact.values()
                   for v in (*lin, *tr) if v.b != 0), 2)
    zero = tuple(QuadraticNumber(0, 0, 1, some_d)
                 for _ in range(sig.r + sig.k))
    sets: dict[str, frozenset] = {v: frozenset({zero}) for v in g.vertices}

    target = steps if steps is not None else max_iter
    iterations = 0
    stabilized = False
    for _ in range(target):
        nxt: dict[str, set] = {v: set() for v in g.vertices}
        for idx, e in enumerate(g.edges):
            lin, tr = exact[idx]
            for pt in sets[e.src]:
                image = tuple((x + t) / a for x, t, a in zip(pt, tr, lin))
                if _in_window(embed(image), retention):
                    nxt[e.dst].add(image)
        frozen = {v: frozenset(pts) for v, pts in nxt.items()}
        iterations += 1
        if sum(len(pts) for pts in frozen.values()) > max_points:
            raise RuntimeError(
                f"dual iteration exceeded the point budget {max_points}")
        if steps is None and frozen == sets:
            stabilized = True
            break
        sets = frozen
    final = {
        v: frozenset(pt for pt in pts if _in_window(embed(pt), window))
        for v, pts in sets.items()
    }
    return PointSetPair(final, window, iterations, stabilized)


def tiling_cover_check(points: PointSetPair, cover: BoxCover, window: Box,
                       m: int) -> float:
    """Fraction of the window's resolution-m cells covered by the union of
    point-translated cover boxes."""
    g = cover.graph
    embedder = ExactEmbedder(g)
    window_cells = cell_set(window, m)
    if not window_cells:
        return 0.0
    covered: set[tuple] = set()
    for v, pts in points.points.items():
        boxes = cover.boxes.get(v, ())
        for pt in pts:
            shift = embedder.embed_point(pt)
            for box in boxes:
                moved = _translate_box(box, shift)
                if _quick_disjoint(moved, window):
                    continue
                covered |= box_cells(moved, m)
    return len(covered & window_cells) / len(window_cells)


def _translate_box(box: Box, shift: Point) -> Box:
    intervals = tuple((lo + x, hi + x)
                      for (lo, hi), x in zip(box.intervals, shift.reals))
    balls = tuple((c + x, mb)
                  for (c, mb), x in zip(box.balls, shift.padics))
    return Box(intervals, box.rects, balls)


def _quick_disjoint(box: Box, window: Box) -> bool:
    for (lo, hi), (wlo, whi) in zip(box.intervals, window.intervals):
        if hi < float(wlo) or lo > float(whi):
            return True
    for (c, mb), (wc, wm) in zip(box.balls, window.balls):
        diff = c - wc
        if not diff.is_zero and diff.valuation < min(mb, wm):
            return True
    return False
