"""Dimension solvers: closed form, spectral iteration, partial sums."""

import math
import random

import numpy as np
import pytest

from mixedifs.dimension import (
    HypothesisViolation,
    affinity_dim_spectral,
    affinity_dim_uniform,
    analyze,
    hausdorff_bounds,
    lower_affinity_dim_spectral,
    lower_affinity_dim_uniform,
    partial_sum_bracket,
    partial_sum_probe,
)
from mixedifs.gifs import (
    GifsGraph,
    GifsEdge,
    adjacency_matrix,
    example_boundary_reduced,
    example_main,
    spectral_radius,
    uniform_linear,
)
from mixedifs.padic import PadicNumber, padic_zero
from mixedifs.space import AffineMap, DiagonalMap, Point, SpaceSignature

RHO_MAIN = (3 + math.sqrt(17)) / 2
BOUNDARY_DIM = 1 + math.log(math.sqrt(17) - 3) / math.log(2)


def example_T():
    return uniform_linear(example_main(32))


# -- closed form ---------------------------------------------------------------


def test_affinity_dim_main():
    q = affinity_dim_uniform(example_T(), RHO_MAIN)
    assert q == pytest.approx(2.0, abs=1e-12)


def test_affinity_dim_boundary():
    q = affinity_dim_uniform(example_T(), 2.0)
    assert q == pytest.approx(BOUNDARY_DIM, abs=1e-12)
    assert q == pytest.approx(1.16749, abs=5e-6)


def test_lower_affinity_dims():
    assert lower_affinity_dim_uniform(example_T(), 2.0) == pytest.approx(1.0, abs=1e-12)
    assert lower_affinity_dim_uniform(example_T(), RHO_MAIN) == \
        pytest.approx(2.0, abs=1e-12)


def test_rho_one_gives_zero():
    assert affinity_dim_uniform(example_T(), 1.0) == 0.0
    assert lower_affinity_dim_uniform(example_T(), 1.0) == 0.0


def test_rho_below_one_rejected():
    with pytest.raises(HypothesisViolation):
        affinity_dim_uniform(example_T(), 0.5)


def test_residual_of_closed_form_root():
    from mixedifs.svf import phi, psi
    T = example_T()
    for rho in (RHO_MAIN, 2.0, 1.3, 3.0, 5.0, 20.0):
        q = affinity_dim_uniform(T, rho)
        assert phi(q, T.singular_values()) * rho == pytest.approx(1.0, abs=1e-12)
        q = lower_affinity_dim_uniform(T, rho)
        assert psi(q, T.singular_values()) * rho == pytest.approx(1.0, abs=1e-12)


def test_third_branch_large_rho():
    # rho so large the root passes the metric dimension
    T = example_T()
    q = affinity_dim_uniform(T, 100.0)
    assert q > 2
    from mixedifs.svf import phi
    assert phi(q, T.singular_values()) * 100.0 == pytest.approx(1.0, abs=1e-12)


# -- spectral iteration -----------------------------------------------------------


def cantor_graph(ratio=0.5, copies=2):
    """One vertex, ``copies`` self-loop similarities of the given ratio."""
    sig = SpaceSignature(r=1)
    edges = tuple(
        GifsEdge("v", "v", AffineMap(DiagonalMap(reals=(ratio,)),
                                     Point(reals=(float(i),))), f"f{i}")
        for i in range(copies))
    return GifsGraph(sig, ("v",), edges)


def test_spectral_matches_closed_form_on_fixtures():
    for builder, expect in ((example_main, 2.0), (example_boundary_reduced,
                                                  BOUNDARY_DIM)):
        g = builder(32)
        rep = affinity_dim_spectral(g, tol=1e-9)
        assert rep.converged
        assert rep.affinity_dim == pytest.approx(expect, abs=1e-6)
        low = lower_affinity_dim_spectral(g, tol=1e-9)
        expect_low = lower_affinity_dim_uniform(uniform_linear(g),
                                                spectral_radius(adjacency_matrix(g)))
        assert low.lower_affinity_dim == pytest.approx(expect_low, abs=1e-6)


def test_spectral_cantor_check():
    rep = affinity_dim_spectral(cantor_graph(0.5, 2), tol=1e-9)
    assert rep.affinity_dim == pytest.approx(1.0, abs=1e-9)


def test_spectral_single_loop_is_zero():
    rep = affinity_dim_spectral(cantor_graph(0.5, 1), tol=1e-9)
    assert rep.affinity_dim == 0.0


def test_spectral_requires_strong_connectivity():
    sig = SpaceSignature(r=1)
    g = GifsGraph(sig, ("v", "w"), (
        GifsEdge("v", "v", AffineMap(DiagonalMap(reals=(0.5,)),
                                     Point(reals=(0.0,))), "a"),
        GifsEdge("v", "w", AffineMap(DiagonalMap(reals=(0.5,)),
                                     Point(reals=(1.0,))), "b"),
        GifsEdge("w", "w", AffineMap(DiagonalMap(reals=(0.25,)),
                                     Point(reals=(0.0,))), "c"),
    ))
    with pytest.raises(HypothesisViolation):
        affinity_dim_spectral(g)


def test_spectral_budget_flagging():
    rep = affinity_dim_spectral(example_main(16), tol=0.0, l_max=4,
                                max_paths=100)
    assert not rep.converged
    assert "budget" in rep.notes or "l_max" in rep.notes
    assert rep.bracket[0] <= rep.affinity_dim <= rep.bracket[1]


def non_uniform_graph():
    sig = SpaceSignature(r=1)
    return GifsGraph(sig, ("v",), (
        GifsEdge("v", "v", AffineMap(DiagonalMap(reals=(0.5,)),
                                     Point(reals=(0.0,))), "a"),
        GifsEdge("v", "v", AffineMap(DiagonalMap(reals=(0.3,)),
                                     Point(reals=(0.5,))), "b"),
    ))


def test_spectral_non_uniform_monotone_chain():
    g = non_uniform_graph()
    rep = affinity_dim_spectral(g, tol=1e-10, l_max=8)
    # self-similar oracle: 0.5^q + 0.3^q = 1
    oracle = 0.0
    lo, hi = 0.0, 2.0
    for _ in range(80):
        oracle = 0.5 * (lo + hi)
        if 0.5 ** oracle + 0.3 ** oracle >= 1:
            lo = oracle
        else:
            hi = oracle
    assert rep.affinity_dim == pytest.approx(oracle, abs=1e-6)
    low = lower_affinity_dim_spectral(g, tol=1e-10, l_max=8)
    assert low.lower_affinity_dim == pytest.approx(oracle, abs=1e-6)


def random_uniform_gifs(rng):
    r = rng.randint(0, 2)
    s = rng.randint(0, 1)
    k = rng.randint(0, 1)
    if r + 2 * s + k == 0:
        r = 1
    primes = tuple(rng.choice([2, 3]) for _ in range(k))
    sig = SpaceSignature(r=r, s=s, primes=primes)
    reals = tuple(rng.choice([-1, 1]) * rng.uniform(0.2, 0.9) for _ in range(r))
    complexes = tuple(rng.uniform(0.2, 0.9) * complex(math.cos(a), math.sin(a))
                      for a in [rng.uniform(0, 2 * math.pi)] for _ in range(s))
    padics = []
    for p in primes:
        digits = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(5)]
        padics.append(PadicNumber(p, rng.randint(1, 2), tuple(digits)))
    T = DiagonalMap(reals, complexes, tuple(padics))
    n = rng.randint(1, 3)
    names = tuple(f"v{i}" for i in range(n))
    zero = Point((0.0,) * r, (0j,) * s, tuple(padic_zero(p) for p in primes))
    edges = [GifsEdge(names[i], names[(i + 1) % n], AffineMap(T, zero), f"c{i}")
             for i in range(n)]
    for extra in range(rng.randint(0, 3)):
        i, j = rng.randrange(n), rng.randrange(n)
        edges.append(GifsEdge(names[i], names[j], AffineMap(T, zero),
                              f"e{extra}"))
    return GifsGraph(sig, names, tuple(edges)), T


def test_spectral_vs_closed_form_random():
    rng = random.Random(61)
    done = 0
    while done < 12:
        g, T = random_uniform_gifs(rng)
        rho = spectral_radius(adjacency_matrix(g))
        rep = affinity_dim_spectral(g, tol=1e-9)
        assert rep.affinity_dim == pytest.approx(
            affinity_dim_uniform(T, rho), abs=1e-6)
        roots_span = rep.bracket[1] - rep.bracket[0]
        assert roots_span <= 1e-7
        done += 1


# -- partial sums ------------------------------------------------------------------


def test_partial_sum_probe_boundary():
    g = example_boundary_reduced(32)
    assert partial_sum_probe(g, 1.0, 60).classification == "diverging"
    assert partial_sum_probe(g, 1.3, 60).classification == "converging"
    probe = partial_sum_probe(g, BOUNDARY_DIM, 60, tol=1e-2)
    assert probe.classification == "inconclusive"
    assert probe.exact


def test_partial_sum_ratio_oracle():
    # uniform system: the tail ratio converges to phi^q(T) * rho(F)
    from mixedifs.svf import phi
    g = example_boundary_reduced(32)
    T = uniform_linear(g)
    for q in (1.0, 1.3):
        probe = partial_sum_probe(g, q, 60)
        assert probe.ratios[-1] == pytest.approx(
            2 * phi(q, T.singular_values()), rel=1e-9)


def test_partial_sum_levels_validation():
    with pytest.raises(ValueError):
        partial_sum_probe(example_main(16), 1.0, levels=1)


def test_partial_sum_bracket():
    g = example_boundary_reduced(32)
    rep = partial_sum_bracket(g, tol=1e-4)
    assert rep.bracket[0] <= BOUNDARY_DIM <= rep.bracket[1] + 1e-12
    assert rep.affinity_dim == pytest.approx(BOUNDARY_DIM, abs=1e-3)
    assert rep.method == "partial_sum"


def test_partial_sum_non_uniform_flagged():
    probe = partial_sum_probe(non_uniform_graph(), 0.8, 40)
    assert not probe.exact


# -- Hausdorff bounds ----------------------------------------------------------------


def test_hausdorff_bounds_boundary_with_assertions():
    low, up = hausdorff_bounds(example_boundary_reduced(32), assert_disjoint=True)
    assert low == pytest.approx(1.0, abs=1e-9)
    assert up == pytest.approx(BOUNDARY_DIM, abs=1e-9)


def test_hausdorff_bounds_main_without_assertions():
    low, up = hausdorff_bounds(example_main(32), assert_disjoint=False)
    assert low == 0.0
    assert up == pytest.approx(2.0, abs=1e-9)


def test_hausdorff_bounds_requires_strong_connectivity():
    from mixedifs.gifs import example_boundary_full
    with pytest.raises(HypothesisViolation):
        hausdorff_bounds(example_boundary_full(16), assert_disjoint=True)


def test_analyze_reports():
    rep = analyze(example_main(32), method="closed", assert_disjoint=False)
    assert rep.method == "closed_form"
    assert "affinity_dim" in rep.to_table()
    assert '"affinity_dim"' in rep.to_json()
    rep = analyze(example_main(32), method="spectral", tol=1e-8)
    assert rep.affinity_dim == pytest.approx(2.0, abs=1e-6)
    assert rep.lower_affinity_dim == pytest.approx(2.0, abs=1e-6)
    with pytest.raises(ValueError):
        analyze(example_main(32), method="nope")


def test_dimension_not_exceeding_metric_dim_on_main():
    g = example_main(32)
    assert hausdorff_bounds(g)[1] <= g.signature.metric_dim + 1e-9
