"""Rendering determinism and figure structure."""

import hashlib

import pytest

from mixedifs.attractor import iterate_cover, standard_seeds
from mixedifs.gifs import example_boundary_reduced, example_main
from mixedifs.padic import from_rational, padic_zero
from mixedifs.render import (
    BOUNDARY_COLOR,
    ImageSpec,
    emit_dot,
    render_cover,
    render_svg,
)
from mixedifs.space import Box

SPEC = ImageSpec(width=192, height=128, x_range=(-2.0, 2.0))


def test_empty_cover_is_background():
    data = render_cover([], SPEC)
    assert data.startswith(b"P6\n192 128\n255\n")
    body = data[len(b"P6\n192 128\n255\n"):]
    assert body == bytes([255]) * (192 * 128 * 3)


def test_single_unit_box_fills_its_window():
    spec = ImageSpec(width=64, height=64, x_range=(0.0, 1.0))
    box = Box(intervals=((0.0, 1.0),), balls=((padic_zero(2), 0),))
    data = render_cover([([box], (10, 20, 30))], spec)
    body = data[data.index(b"255\n") + 4:]
    assert body == bytes((10, 20, 30)) * (64 * 64)


def test_rendering_is_deterministic():
    g = example_main()
    cov = iterate_cover(g, standard_seeds(g), 5)
    layers = [(cov, (0, 0, 0))]
    first = render_cover(layers, SPEC)
    second = render_cover(layers, SPEC)
    assert first == second
    assert hashlib.sha256(first).hexdigest() == hashlib.sha256(second).hexdigest()


def test_disjoint_balls_get_disjoint_rows():
    spec = ImageSpec(width=8, height=64, x_range=(0.0, 1.0))
    ball_a = Box(intervals=((0.0, 1.0),), balls=((padic_zero(2), 1),))
    ball_b = Box(intervals=((0.0, 1.0),), balls=((from_rational(1, 1, 2, 8), 1),))
    img_a = render_cover([([ball_a], (1, 1, 1))], spec)
    img_b = render_cover([([ball_b], (1, 1, 1))], spec)
    rows_a = {i for i in range(64)
              if img_a[len(b"P6\n8 64\n255\n") + i * 8 * 3] == 1}
    rows_b = {i for i in range(64)
              if img_b[len(b"P6\n8 64\n255\n") + i * 8 * 3] == 1}
    assert rows_a and rows_b and not (rows_a & rows_b)


def test_boundary_share_of_figure():
    g = example_main()
    gb = example_boundary_reduced()
    depth = 8
    cov = iterate_cover(g, standard_seeds(g), depth)
    covb = iterate_cover(gb, standard_seeds(gb), depth)
    spec = ImageSpec(width=384, height=256, x_range=(-2.0, 2.0))
    data = render_cover([(cov, (50, 50, 50)), (covb, BOUNDARY_COLOR)], spec)
    body = data[data.index(b"255\n") + 4:]
    pixels = [body[i:i + 3] for i in range(0, len(body), 3)]
    share = sum(1 for p in pixels if p == bytes(BOUNDARY_COLOR)) / len(pixels)
    assert 0.005 < share < 0.15


def test_unsupported_signature_rejected():
    with pytest.raises(ValueError):
        render_cover([([Box(intervals=((0, 1), (0, 1)))], (0, 0, 0))], SPEC)
    with pytest.raises(ValueError):
        ImageSpec(width=0, height=10)


def test_svg_output():
    box = Box(intervals=((0.0, 1.0),), balls=((padic_zero(2), 0),))
    text = render_svg([([box], (1, 2, 3))], SPEC)
    assert text.startswith("<svg") and text.endswith("</svg>")
    assert 'fill="rgb(1, 2, 3)"' in text


def test_emit_dot_boundary_structure():
    dot = emit_dot(example_boundary_reduced(24))
    lines = dot.strip().splitlines()
    node_lines = [l for l in lines if l.endswith(';') and '->' not in l]
    edge_lines = [l for l in lines if '->' in l]
    assert len(node_lines) == 5
    assert len(edge_lines) == 10
    assert 'label="T(x)+t2"' in dot


def test_emit_dot_empty_graph():
    from mixedifs.gifs import GifsGraph
    from mixedifs.space import SpaceSignature
    dot = emit_dot(GifsGraph(SpaceSignature(r=1), ("v",), ()))
    assert dot == 'digraph gifs {\n  "v";\n}\n'


def test_emit_dot_counts_match_graph():
    g = example_main(24)
    dot = emit_dot(g)
    assert dot.count("->") == len(g.edges)
