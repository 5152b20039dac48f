"""End-to-end verification suite.

Each criterion returns (ok, detail) and is registered in CRITERIA; the CLI
``verify`` command and the acceptance tests run the same functions.  Every
check is deterministic: randomised suites use fixed seeds.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .algebraic import QuadraticNumber
from .attractor import (
    box_count,
    box_dim_estimate,
    dual_iterate,
    iterate_cover,
    overlap_fraction,
    standard_seeds,
    tiling_cover_check,
)
from .dimension import (
    affinity_dim_spectral,
    affinity_dim_uniform,
    lower_affinity_dim_spectral,
    lower_affinity_dim_uniform,
    partial_sum_probe,
)
from .gifs import (
    EXAMPLE_KAPPA,
    EXAMPLE_LAM,
    GifsEdge,
    GifsGraph,
    adjacency_matrix,
    example_boundary_reduced,
    example_main,
    spectral_radius,
    uniform_linear,
)
from .padic import PadicNumber, from_rational, hensel_lift, padic_zero
from .render import BOUNDARY_COLOR, ImageSpec, emit_dot, render_cover
from .space import AffineMap, Box, DiagonalMap, Point, SpaceSignature, haar_measure
from .svf import phi, psi

BOUNDARY_DIM = 1 + math.log(math.sqrt(17) - 3) / math.log(2)
_BOUNDARY_COUNT_DEPTH = 12  # deep enough that cover thickness ~ finest cell


def _check(ok: bool, detail: str) -> tuple[bool, str]:
    return bool(ok), detail


def criterion_main_affinity() -> tuple[bool, str]:
    """Closed form on the main system gives 2.0; alpha1*alpha2*rho = 1 exactly."""
    g = example_main()
    t = uniform_linear(g)
    rho = spectral_radius(adjacency_matrix(g))
    q = affinity_dim_uniform(t, rho)
    alpha2 = t.padics[0].norm()
    product = abs(EXAMPLE_KAPPA) * EXAMPLE_LAM * alpha2
    exact = product.is_rational and product.as_fraction() == 1
    ok = abs(q - 2.0) <= 1e-9 and exact
    return _check(ok, f"affinity_dim={q:.12f}, exact identity: {exact}")


def criterion_boundary_dims() -> tuple[bool, str]:
    """Boundary system: affinity 1.16749... (1e-6), lower affinity 1 (1e-9)."""
    g = example_boundary_reduced()
    t = uniform_linear(g)
    rho = spectral_radius(adjacency_matrix(g))
    up = affinity_dim_uniform(t, rho)
    low = lower_affinity_dim_uniform(t, rho)
    ok = abs(up - BOUNDARY_DIM) <= 1e-6 and abs(low - 1.0) <= 1e-9
    return _check(ok, f"upper={up:.9f} (target {BOUNDARY_DIM:.9f}), lower={low:.9f}")


def _random_uniform_gifs(rng: random.Random) -> tuple[GifsGraph, DiagonalMap]:
    r = rng.randint(0, 2)
    s = rng.randint(0, 1)
    k = rng.randint(0, 1)
    if r + 2 * s + k == 0:
        r = 1
    primes = tuple(rng.choice([2, 3]) for _ in range(k))
    sig = SpaceSignature(r=r, s=s, primes=primes)
    reals = tuple(rng.choice([-1, 1]) * rng.uniform(0.2, 0.9) for _ in range(r))
    complexes = tuple(
        rng.uniform(0.2, 0.9) * complex(math.cos(a), math.sin(a))
        for a in [rng.uniform(0, 2 * math.pi) for _ in range(s)])
    padics = []
    for p in primes:
        digits = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(5)]
        padics.append(PadicNumber(p, rng.randint(1, 2), tuple(digits)))
    t = DiagonalMap(reals, complexes, tuple(padics))
    n = rng.randint(1, 3)
    names = tuple(f"v{i}" for i in range(n))
    zero = Point((0.0,) * r, (0j,) * s, tuple(padic_zero(p) for p in primes))
    edges = [GifsEdge(names[i], names[(i + 1) % n], AffineMap(t, zero), f"c{i}")
             for i in range(n)]
    for extra in range(rng.randint(0, 3)):
        edges.append(GifsEdge(names[rng.randrange(n)], names[rng.randrange(n)],
                              AffineMap(t, zero), f"e{extra}"))
    return GifsGraph(sig, names, tuple(edges)), t


def criterion_solver_cross_validation() -> tuple[bool, str]:
    """Spectral iteration agrees with the closed form to 1e-6 on the fixtures
    and 50 random uniform systems; doubling-level roots are monotone."""
    rng = random.Random(20250809)
    cases = [example_main(32), example_boundary_reduced(32)]
    cases += [_random_uniform_gifs(rng)[0] for _ in range(50)]
    worst = 0.0
    for g in cases:
        t = uniform_linear(g)
        rho = spectral_radius(adjacency_matrix(g))
        closed_up = affinity_dim_uniform(t, rho)
        closed_low = lower_affinity_dim_uniform(t, rho)
        up = affinity_dim_spectral(g, tol=1e-9)
        low = lower_affinity_dim_spectral(g, tol=1e-9)
        worst = max(worst, abs(up.affinity_dim - closed_up),
                    abs(low.lower_affinity_dim - closed_low))
        if worst > 1e-6:
            return _check(False, f"solver disagreement {worst:.3e}")
        # monotone chains (equal up to bisection tolerance on uniform systems)
        if up.bracket[1] - up.bracket[0] > 1e-8:
            return _check(False, f"upper roots not monotone: {up.bracket}")
        if low.bracket[1] - low.bracket[0] > 1e-8:
            return _check(False, f"lower roots not monotone: {low.bracket}")
    return _check(True, f"52 systems, max |spectral-closed| = {worst:.2e}")


def criterion_partial_sums() -> tuple[bool, str]:
    """On the boundary system, q=1.0 diverges and q=1.3 converges at 60 levels."""
    g = example_boundary_reduced()
    a = partial_sum_probe(g, 1.0, levels=60)
    b = partial_sum_probe(g, 1.3, levels=60)
    ok = a.classification == "diverging" and b.classification == "converging"
    return _check(ok, f"q=1.0 -> {a.classification} (ratio {a.ratios[-1]:.6f}), "
                      f"q=1.3 -> {b.classification} (ratio {b.ratios[-1]:.6f})")


def criterion_padic_constants() -> tuple[bool, str]:
    """Root of x^2-3x-2 over Q_2: digit string 01101..., 64 exact digits,
    norm 1/2."""
    root = hensel_lift((-2, -3, 1), 2, 0, 64)
    digits_ok = root.digit_string()[:5] == "01101"
    value = root.unit_value() * 2 ** root.valuation
    residue = (value * value - 3 * value - 2) % (2 ** 64)
    norm_ok = root.norm() == Fraction(1, 2)
    ok = digits_ok and residue == 0 and norm_ok
    return _check(ok, f"digits {root.digit_string()[:8]}..., "
                      f"f(x) mod 2^64 = {residue}, norm = {root.norm()}")


def criterion_spectral_radii() -> tuple[bool, str]:
    """rho([[3,2],[1,0]]) = (3+sqrt(17))/2 to 1e-9; boundary rho = 2 to 1e-12."""
    rho_main = spectral_radius([[3, 2], [1, 0]])
    target = (3 + math.sqrt(17)) / 2
    rho_boundary = spectral_radius(adjacency_matrix(example_boundary_reduced(24)))
    ok = abs(rho_main - target) <= 1e-9 and abs(rho_boundary - 2.0) <= 1e-12
    return _check(ok, f"rho_main={rho_main:.12f} (target {target:.12f}), "
                      f"rho_boundary={rho_boundary:.15f}")


def _random_padic(rng: random.Random, p: int, max_prec: int = 10,
                  precision: int | None = None) -> PadicNumber:
    n = precision if precision is not None else rng.randint(1, max_prec)
    digits = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(n - 1)]
    return PadicNumber(p, rng.randint(-4, 4), tuple(digits))


def _shoelace(points) -> float:
    area = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:] + points[:1]):
        area += x0 * y1 - x1 * y0
    return abs(area) / 2.0


def criterion_property_suites() -> tuple[bool, str]:
    """Randomised invariant suites with zero tolerance for violations."""
    rng = random.Random(987654321)
    violations = []

    # ultrametric inequality, 10^4 random triples; one shared precision so a
    # difference cancels to zero only when the operands are truly equal
    for _ in range(10_000):
        p = rng.choice([2, 3, 5])
        x, y, z = (_random_padic(rng, p, precision=12) for _ in range(3))
        d_xz = (x - z).norm()
        bound = max((x - y).norm(), (y - z).norm())
        if d_xz > bound:
            violations.append(f"ultrametric: {d_xz} > {bound}")
            break

    # Haar scaling, 10^3 box/scalar pairs per coordinate type
    for _ in range(1_000):
        lo = rng.uniform(-5, 5)
        hi = lo + rng.uniform(0, 4)
        alpha = rng.uniform(-3, 3)
        box = Box(intervals=((lo, hi),))
        f = AffineMap(DiagonalMap(reals=(alpha,)), Point(reals=(0.0,)))
        got = float(haar_measure(f.apply_box(box)))
        want = abs(alpha) * float(haar_measure(box))
        if abs(got - want) > 1e-9 * max(1.0, want):
            violations.append("haar real")
            break
    for _ in range(1_000):
        x0, y0 = rng.uniform(-3, 3), rng.uniform(-3, 3)
        w, h = rng.uniform(0.1, 2), rng.uniform(0.1, 2)
        alpha = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        corners = [(x0, y0), (x0 + w, y0), (x0 + w, y0 + h), (x0, y0 + h)]
        oracle = _shoelace([((alpha * complex(cx, cy)).real,
                             (alpha * complex(cx, cy)).imag)
                            for cx, cy in corners])
        want = abs(alpha) ** 2 * w * h
        if abs(oracle - want) > 1e-9 * max(1.0, want):
            violations.append("haar complex")
            break
    for _ in range(1_000):
        p = rng.choice([2, 3, 5])
        ball = (_random_padic(rng, p), rng.randint(-3, 6))
        alpha = _random_padic(rng, p)
        f = AffineMap(DiagonalMap(padics=(alpha,)), Point(padics=(padic_zero(p),)))
        if haar_measure(f.apply_box(Box(balls=(ball,)))) != \
                alpha.norm() * haar_measure(Box(balls=(ball,))):
            violations.append("haar p-adic")
            break

    # phi submultiplicative / psi supermultiplicative, 10^3 pairs
    for _ in range(1_000):
        shape = rng.choice([(1, 0, ()), (2, 0, ()), (1, 0, (2,)), (0, 1, (3,))])
        r, s, primes = shape
        t = _random_diag(rng, r, s, primes)
        u = _random_diag(rng, r, s, primes)
        d = r + 2 * s + len(primes)
        q = rng.uniform(0, d + 2)
        both = t.compose(u).singular_values()
        if phi(q, both) > phi(q, t.singular_values()) * \
                phi(q, u.singular_values()) * (1 + 1e-11):
            violations.append("phi submultiplicative")
            break
        if psi(q, both) < psi(q, t.singular_values()) * \
                psi(q, u.singular_values()) * (1 - 1e-11):
            violations.append("psi supermultiplicative")
            break

    # power identity and duality
    for _ in range(1_000):
        shape = rng.choice([(1, 0, ()), (1, 0, (2,)), (0, 1, ())])
        r, s, primes = shape
        t = _random_diag(rng, r, s, primes)
        d = r + 2 * s + len(primes)
        q = rng.uniform(0, d + 2)
        n = rng.randint(2, 5)
        if abs(phi(q, t.power(n).singular_values())
               - phi(q, t.singular_values()) ** n) > \
                1e-9 * phi(q, t.singular_values()) ** n:
            violations.append("power identity")
            break
        sv = t.singular_values()
        sv_inv = tuple(sorted((1 / a for a in sv), reverse=True))
        if abs(psi(q, sv) * phi(q, sv_inv, allow_expanding=True) - 1) > 1e-10:
            violations.append("duality")
            break

    return _check(not violations,
                  "0 violations in all suites" if not violations
                  else f"violated: {violations[0]}")


def _random_diag(rng, r, s, primes):
    reals = tuple(rng.choice([-1, 1]) * rng.uniform(0.15, 0.92) for _ in range(r))
    complexes = tuple(rng.uniform(0.15, 0.9) *
                      complex(math.cos(a), math.sin(a))
                      for a in [rng.uniform(0, 2 * math.pi) for _ in range(s)])
    padics = []
    for p in primes:
        n = rng.randint(3, 8)
        digits = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(n - 1)]
        padics.append(PadicNumber(p, rng.randint(1, 3), tuple(digits)))
    return DiagonalMap(reals, complexes, tuple(padics))


def criterion_numerical_geometry() -> tuple[bool, str]:
    """Box-count slopes (main near 2, boundary near 1.17) and strictly
    decreasing overlap between the two main tiles."""
    g = example_main()
    cov = iterate_cover(g, standard_seeds(g), 9)
    counts = [(m, box_count(cov.boxes["Omega_a"], m)) for m in range(4, 10)]
    slope_main, _ = box_dim_estimate(counts)

    gb = example_boundary_reduced()
    covb = iterate_cover(gb, standard_seeds(gb), _BOUNDARY_COUNT_DEPTH)
    counts_b = [(m, box_count(covb.all_boxes(), m)) for m in range(4, 10)]
    slope_boundary, _ = box_dim_estimate(counts_b)

    overlaps = [overlap_fraction(cov.boxes["Omega_a"], cov.boxes["Omega_b"], m)
                for m in range(4, 9)]
    decreasing = all(a > b for a, b in zip(overlaps, overlaps[1:]))

    ok = 1.85 <= slope_main <= 2.05 and 0.9 <= slope_boundary <= 1.35 \
        and decreasing
    return _check(ok, f"main slope {slope_main:.4f}, boundary slope "
                      f"{slope_boundary:.4f}, overlaps "
                      f"{['%.4f' % v for v in overlaps]}")


def criterion_artifacts() -> tuple[bool, str]:
    """Byte-stable rendering; boundary graph has 5 nodes and 10 edges."""
    g = example_main()
    gb = example_boundary_reduced()
    cov = iterate_cover(g, standard_seeds(g), 8)
    covb = iterate_cover(gb, standard_seeds(gb), 8)
    spec = ImageSpec(width=384, height=256)
    layers = [(cov, (0, 0, 0)), (covb, BOUNDARY_COLOR)]
    stable = render_cover(layers, spec) == render_cover(layers, spec)
    dot = emit_dot(gb)
    lines = dot.strip().splitlines()
    nodes = sum(1 for l in lines if l.endswith(";") and "->" not in l)
    edges = sum(1 for l in lines if "->" in l)
    ok = stable and nodes == 5 and edges == 10
    return _check(ok, f"render byte-stable: {stable}, dot nodes={nodes}, "
                      f"edges={edges}")


def criterion_dual_tiling() -> tuple[bool, str]:
    """First dual iteration is exactly {(0,0), (1/2,1/2)} at the second
    vertex; translated depth-8 covers tile the unit window at m=5."""
    g = example_main()
    first = dual_iterate(
        g, Box(intervals=((-1.0, 1.0),), balls=((padic_zero(2), -1),)), steps=1)
    half = QuadraticNumber(1, 0, 2, 17)
    zero = QuadraticNumber(0, 0, 1, 17)
    expected = frozenset({(zero, zero), (half, half)})
    first_ok = first.points["Omega_b"] == expected

    pts = dual_iterate(
        g, Box(intervals=((-2.6, 2.6),), balls=((padic_zero(2), 0),)))
    cov = iterate_cover(g, standard_seeds(g), 8)
    window = Box(intervals=((0.0, 1.0),), balls=((padic_zero(2), 0),))
    coverage = tiling_cover_check(pts, cov, window, 5)
    ok = first_ok and pts.stabilized and coverage >= 0.95
    return _check(ok, f"first iteration exact: {first_ok}, fixed point: "
                      f"{pts.stabilized}, coverage at m=5: {coverage:.4f}")


CRITERIA: list[tuple[str, object]] = [
    ("main_affinity_dimension", criterion_main_affinity),
    ("boundary_dimensions", criterion_boundary_dims),
    ("solver_cross_validation", criterion_solver_cross_validation),
    ("partial_sum_probe", criterion_partial_sums),
    ("padic_constants", criterion_padic_constants),
    ("spectral_radii", criterion_spectral_radii),
    ("property_suites", criterion_property_suites),
    ("numerical_geometry", criterion_numerical_geometry),
    ("artifacts", criterion_artifacts),
    ("dual_tiling", criterion_dual_tiling),
]


def run(only: set[str] | None = None, emit=print) -> int:
    """Run the criteria (all, or the named subset); returns the number of
    failures."""
    failures = 0
    for name, fn in CRITERIA:
        if only and name not in only:
            continue
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        emit(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failures += 0 if ok else 1
    return failures
