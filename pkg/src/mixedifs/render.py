"""Deterministic rendering of covers in R x Q_p and of the system graph.

Boxes are drawn as axis-aligned rectangles: the real interval maps to pixel
columns, the p-adic ball to rows through the digit-series embedding of its
center (its extent is the exact supremum of the remaining digit tail, which
is base**-m for base = p and leaves Cantor gaps for larger bases).  Output
is binary PPM (P6) so images are byte-comparable without any codec; an SVG
emitter is included for vector output.  Later layers paint over earlier
ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .attractor import BoxCover
from .gifs import GifsGraph
from .padic import PadicNumber
from .space import Box

Color = tuple[int, int, int]

OMEGA_A_COLOR: Color = (96, 96, 96)
OMEGA_B_COLOR: Color = (192, 192, 192)
BOUNDARY_COLOR: Color = (0, 0, 0)
DEFAULT_VERTEX_COLORS = {"Omega_a": OMEGA_A_COLOR, "Omega_b": OMEGA_B_COLOR}


@dataclass(frozen=True)
class ImageSpec:
    width: int = 768
    height: int = 512
    x_range: tuple[float, float] = (-2.0, 2.0)
    base: int = 2
    background: Color = (255, 255, 255)
    vertex_colors: tuple[tuple[str, Color], ...] = tuple(
        DEFAULT_VERTEX_COLORS.items())

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image must have positive size")
        if self.x_range[1] <= self.x_range[0]:
            raise ValueError("x range is empty")

    def color_for(self, vertex: str, fallback: Color) -> Color:
        return dict(self.vertex_colors).get(vertex, fallback)


def _require_renderable(box: Box) -> None:
    if len(box.intervals) != 1 or len(box.balls) != 1 or box.rects:
        raise ValueError("rendering supports exactly R x Q_p (r=1, k=1)")


def _embed_interval(center: PadicNumber, m: int, base: int) -> tuple[float, float]:
    """[y0, y0 + span] range of the embedded ball center + p**m Z_p."""
    if m < 0:
        raise ValueError("balls larger than Z_p cannot be drawn")
    p = center.prime
    if base < p:
        raise ValueError(f"embedding base must be >= p = {p}")
    rep = int(center.coset_rep(m))
    y0 = 0.0
    scale = 1.0
    for _ in range(m):
        scale /= base
        digit = rep % p
        rep //= p
        y0 += digit * scale
    span = scale * ((p - 1) / (base - 1)) if base > 1 else scale
    return y0, span


def _pixel_span(lo: float, hi: float, size: int) -> tuple[int, int]:
    a = max(0, min(size, math.floor(lo * size)))
    b = max(0, min(size, math.ceil(hi * size)))
    return a, b


def render_cover(layers, spec: ImageSpec) -> bytes:
    """Rasterize layers of (boxes-or-cover, color) into P6 bytes.

    A BoxCover layer is colored per vertex from the spec's color table.
    Identical inputs produce identical bytes.
    """
    h, w = spec.height, spec.width
    canvas = np.empty((h, w, 3), dtype=np.uint8)
    canvas[:, :] = np.array(spec.background, dtype=np.uint8)
    x0, x1 = spec.x_range
    for source, color in layers:
        if isinstance(source, BoxCover):
            groups = [(spec.color_for(v, color), boxes)
                      for v, boxes in source.boxes.items()]
        else:
            groups = [(color, tuple(source))]
        for rgb, boxes in groups:
            paint = np.array(rgb, dtype=np.uint8)
            for box in boxes:
                _require_renderable(box)
                lo, hi = box.intervals[0]
                px0, px1 = _pixel_span((float(lo) - x0) / (x1 - x0),
                                       (float(hi) - x0) / (x1 - x0), w)
                if px0 >= px1:
                    continue
                center, m = box.balls[0]
                y0, span = _embed_interval(center, m, spec.base)
                py0, py1 = _pixel_span(y0, y0 + span, h)
                if py0 >= py1:
                    continue
                # row 0 is the top of the image; the embedding grows upward
                canvas[h - py1:h - py0, px0:px1] = paint
    header = f"P6\n{w} {h}\n255\n".encode("ascii")
    return header + canvas.tobytes()


def render_svg(layers, spec: ImageSpec) -> str:
    """Vector variant of render_cover: one rect per box."""
    h, w = spec.height, spec.width
    x0, x1 = spec.x_range
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="rgb{spec.background}"/>',
    ]
    for source, color in layers:
        if isinstance(source, BoxCover):
            groups = [(spec.color_for(v, color), boxes)
                      for v, boxes in source.boxes.items()]
        else:
            groups = [(color, tuple(source))]
        for rgb, boxes in groups:
            for box in boxes:
                _require_renderable(box)
                lo, hi = box.intervals[0]
                bx = (float(lo) - x0) / (x1 - x0) * w
                bw = (float(hi) - float(lo)) / (x1 - x0) * w
                center, m = box.balls[0]
                y0, span = _embed_interval(center, m, spec.base)
                parts.append(
                    f'<rect x="{bx:.3f}" y="{h - (y0 + span) * h:.3f}" '
                    f'width="{max(bw, 0.1):.3f}" height="{max(span * h, 0.1):.3f}" '
                    f'fill="rgb{rgb}"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def emit_dot(g: GifsGraph) -> str:
    """Graphviz text: one node per vertex, one labeled edge per map, in
    stored order."""
    lines = ["digraph gifs {"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for e in g.edges:
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
