"""Graph model, spectral radius, path enumeration, spec files, fixtures."""

import json
import math

import numpy as np
import pytest

from mixedifs.gifs import (
    FIXTURES,
    SpecFormatError,
    adjacency_matrix,
    enumerate_paths,
    example_boundary_full,
    example_boundary_reduced,
    example_main,
    is_strongly_connected,
    parse_spec,
    path_affine,
    path_linear,
    serialize_spec,
    spectral_radius,
    uniform_linear,
)
from mixedifs.svf import phi


def reachable(adj, start):
    """Brute-force reachability oracle."""
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen


# -- fixtures -----------------------------------------------------------------


def test_main_fixture_shape():
    g = example_main(24)
    assert g.vertices == ("Omega_a", "Omega_b")
    assert len(g.edges) == 6
    assert adjacency_matrix(g).tolist() == [[3, 2], [1, 0]]


def test_boundary_reduced_shape():
    g = example_boundary_reduced(24)
    assert len(g.vertices) == 5
    assert len(g.edges) == 10
    f = adjacency_matrix(g)
    assert f.sum(axis=1).tolist() == [2, 2, 2, 2, 2]


def test_boundary_full_shape():
    g = example_boundary_full(24)
    assert len(g.vertices) == 8
    assert len(g.edges) == 14


def test_fixtures_share_one_linear_part():
    for name, builder in FIXTURES.items():
        g = builder(24)
        assert uniform_linear(g) is not None, name


def test_fixture_constants():
    g = example_main(24)
    T = uniform_linear(g)
    assert T.reals[0] == pytest.approx((3 - math.sqrt(17)) / 2, abs=1e-12)
    assert T.padics[0].digit_string()[:5] == "01101"
    assert float(T.padics[0].norm()) == 0.5


def test_empty_graph_adjacency():
    from mixedifs.gifs import GifsGraph
    from mixedifs.space import SpaceSignature
    g = GifsGraph(SpaceSignature(r=1), ("v", "w"), ())
    assert adjacency_matrix(g).tolist() == [[0, 0], [0, 0]]
    assert not is_strongly_connected(g)


# -- spectral radius ------------------------------------------------------------


def test_spectral_radius_main():
    rho = spectral_radius([[3, 2], [1, 0]])
    assert rho == pytest.approx((3 + math.sqrt(17)) / 2, abs=1e-9)


def test_spectral_radius_boundary():
    f = adjacency_matrix(example_boundary_reduced(24))
    assert spectral_radius(f) == pytest.approx(2.0, abs=1e-12)


def test_spectral_radius_identity_and_errors():
    assert spectral_radius(np.eye(3)) == 1.0
    with pytest.raises(ValueError):
        spectral_radius(np.ones((2, 3)))
    with pytest.raises(ValueError):
        spectral_radius([[-1]])


def test_spectral_radius_periodic_block():
    # plain power iteration cycles on this matrix; the +I shift must not
    assert spectral_radius([[0, 2], [1, 0]]) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_spectral_radius_reducible():
    m = [[0.5, 1, 0], [0, 0.25, 0], [0, 0, 3]]
    assert spectral_radius(m) == pytest.approx(3.0, abs=1e-12)


def test_spectral_radius_matches_numpy_oracle():
    rng = np.random.default_rng(53)
    for _ in range(40):
        n = rng.integers(1, 6)
        m = rng.random((n, n)) * (rng.random((n, n)) < 0.7)
        oracle = max(abs(np.linalg.eigvals(m)))
        assert spectral_radius(m) == pytest.approx(oracle, abs=1e-8)


# -- connectivity -----------------------------------------------------------------


def test_strong_connectivity():
    assert is_strongly_connected(example_main(24))
    assert is_strongly_connected(example_boundary_reduced(24))
    assert not is_strongly_connected(example_boundary_full(24))


def test_strong_connectivity_brute_force_oracle():
    for builder in (example_main, example_boundary_reduced, example_boundary_full):
        g = builder(24)
        n = len(g.vertices)
        adj = [[] for _ in range(n)]
        for e in g.edges:
            adj[g.vertex_index(e.src)].append(g.vertex_index(e.dst))
        oracle = all(len(reachable(adj, v)) == n for v in range(n))
        assert is_strongly_connected(g) == oracle


# -- path enumeration ---------------------------------------------------------------


def test_path_counts_match_matrix_powers():
    for builder in (example_main, example_boundary_reduced):
        g = builder(16)
        f = adjacency_matrix(g)
        # the empty path set at length 0 is a convention, not F^0 = I
        for length in range(1, 7):
            groups = enumerate_paths(g, length)
            power = np.linalg.matrix_power(f, length)
            for i, u in enumerate(g.vertices):
                for j, w in enumerate(g.vertices):
                    assert len(groups.get((u, w), [])) == power[i, j]


def test_path_enumeration_examples():
    g = example_main(16)
    assert sum(len(v) for v in enumerate_paths(g, 1).values()) == 6
    two = enumerate_paths(g, 2)
    assert sum(len(v) for v in two.values()) == 22
    assert enumerate_paths(g, 0) == {}
    with pytest.raises(ValueError):
        enumerate_paths(g, -1)


def test_empty_path_is_identity():
    from mixedifs.gifs import PathSlice
    from mixedifs.space import Point, zero_point
    g = example_main(16)
    f = path_affine(g, PathSlice((), "Omega_a", "Omega_a"))
    x = Point((1.25,), (), (g.edges[0].map.linear.padics[0],))
    y = f(x)
    assert y.reals == x.reals and y.padics[0] == x.padics[0].truncate(16)


def test_uniform_path_powers():
    g = example_main(16)
    T = uniform_linear(g)
    groups = enumerate_paths(g, 3)
    some = next(iter(groups.values()))[0]
    lin = path_linear(g, some)
    assert lin.reals[0] == pytest.approx(T.reals[0] ** 3, rel=1e-14)
    assert lin.padics[0].valuation == 3
    # phi of an l-step path equals phi(T)^l
    q = 1.3
    assert phi(q, lin.singular_values()) == pytest.approx(
        phi(q, T.singular_values()) ** 3, rel=1e-12)


# -- spec files --------------------------------------------------------------------


def test_round_trip_all_fixtures():
    for builder in FIXTURES.values():
        g = builder(24)
        assert parse_spec(serialize_spec(g)) == g


def test_parse_rejects_unknown_constant():
    doc = json.loads(main_spec_text())
    doc["edges"][0]["translate"] = ["nope", "0"]
    with pytest.raises(SpecFormatError, match="unknown constant"):
        parse_spec(json.dumps(doc))


def test_parse_rejects_non_contracting():
    doc = json.loads(main_spec_text())
    for e in doc["edges"]:
        e["linear"] = ["2", "lam"]
    with pytest.raises(SpecFormatError, match="contracting"):
        parse_spec(json.dumps(doc))


def test_parse_rejects_malformed():
    with pytest.raises(SpecFormatError):
        parse_spec("{not json")
    with pytest.raises(SpecFormatError):
        parse_spec(json.dumps({"space": {"real": 1}}))


def test_parse_requires_selector_for_irrational_padic():
    doc = json.loads(main_spec_text())
    doc["constants"]["lam"].pop("selector")
    with pytest.raises(SpecFormatError, match="selector"):
        parse_spec(json.dumps(doc))


def main_spec_text():
    from mixedifs.gifs import main_example_spec
    return main_example_spec(24)
