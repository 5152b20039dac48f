"""phi/psi singular value functions: branch formulas and inequalities."""

import math
import random

import pytest

from mixedifs.padic import PadicNumber
from mixedifs.space import DiagonalMap
from mixedifs.svf import phi, psi

ALPHA1 = (math.sqrt(17) - 3) / 2
EXAMPLE = (ALPHA1, 0.5)


def random_contracting(rng, r=0, s=0, primes=()):
    reals = tuple(rng.choice([-1, 1]) * rng.uniform(0.15, 0.92) for _ in range(r))
    complexes = tuple(rng.uniform(0.15, 0.9) *
                      complex(math.cos(a := rng.uniform(0, 2 * math.pi)), math.sin(a))
                      for _ in range(s))
    padics = []
    for p in primes:
        n = rng.randint(3, 8)
        digits = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(n - 1)]
        padics.append(PadicNumber(p, rng.randint(1, 3), tuple(digits)))
    return DiagonalMap(reals, complexes, tuple(padics))


def random_shape(rng):
    while True:
        r, s, k = rng.randint(0, 2), rng.randint(0, 1), rng.randint(0, 1)
        if r + 2 * s + k > 0:
            return r, s, tuple(rng.choice([2, 3, 5]) for _ in range(k))


def test_phi_at_zero():
    assert phi(0.0, EXAMPLE) == 1.0
    assert psi(0.0, EXAMPLE) == 1.0


def test_phi_example_values():
    assert phi(2.0, EXAMPLE) == pytest.approx((math.sqrt(17) - 3) / 4, rel=1e-12)
    assert phi(2.0, EXAMPLE) == pytest.approx(0.28078, abs=5e-6)
    assert phi(3.0, EXAMPLE) == pytest.approx((ALPHA1 * 0.5) ** 1.5, rel=1e-12)
    assert phi(3.0, EXAMPLE) == pytest.approx(0.14878, abs=5e-6)


def test_psi_example_values():
    assert psi(1.0, EXAMPLE) == 0.5
    assert psi(2.0, EXAMPLE) == pytest.approx(phi(2.0, EXAMPLE), rel=1e-15)


def test_validation_errors():
    with pytest.raises(ValueError):
        phi(1.0, (0.3, 0.5))  # unsorted
    with pytest.raises(ValueError):
        phi(1.0, (1.5, 0.5))  # outside (0, 1)
    with pytest.raises(ValueError):
        phi(1.0, (0.5, 0.0))  # singular
    with pytest.raises(ValueError):
        phi(-1.0, EXAMPLE)
    assert phi(1.0, (1.5, 0.5), allow_expanding=True) == pytest.approx(1.5)


def test_strictly_decreasing_and_continuous():
    alphas = (0.8, 0.5, 0.25)
    grid = [i / 64 for i in range(0, 64 * 5)]
    values = [phi(q, alphas) for q in grid]
    assert all(a > b for a, b in zip(values, values[1:]))
    values = [psi(q, alphas) for q in grid]
    assert all(a > b for a, b in zip(values, values[1:]))
    # continuity across the integer segment joints
    for j in (1, 2, 3):
        left = phi(j - 1e-12, alphas)
        assert phi(float(j), alphas) == pytest.approx(left, rel=1e-9)
        assert psi(float(j), alphas) == pytest.approx(psi(j - 1e-12, alphas), rel=1e-9)


def test_submultiplicative_supermultiplicative():
    rng = random.Random(41)
    for _ in range(400):
        r, s, primes = random_shape(rng)
        T = random_contracting(rng, r, s, primes)
        U = random_contracting(rng, r, s, primes)
        d = r + 2 * s + len(primes)
        q = rng.uniform(0, d + 2)
        sv_tu = T.compose(U).singular_values()
        assert phi(q, sv_tu) <= phi(q, T.singular_values()) * \
            phi(q, U.singular_values()) * (1 + 1e-11)
        assert psi(q, sv_tu) >= psi(q, T.singular_values()) * \
            psi(q, U.singular_values()) * (1 - 1e-11)


def test_power_identity():
    rng = random.Random(43)
    for _ in range(100):
        r, s, primes = random_shape(rng)
        T = random_contracting(rng, r, s, primes)
        d = r + 2 * s + len(primes)
        q = rng.uniform(0, d + 2)
        n = rng.randint(2, 5)
        lhs = phi(q, T.power(n).singular_values())
        rhs = phi(q, T.singular_values()) ** n
        assert lhs == pytest.approx(rhs, rel=1e-9)


def test_duality():
    rng = random.Random(47)
    for _ in range(200):
        r, s, primes = random_shape(rng)
        T = random_contracting(rng, r, s, primes)
        d = r + 2 * s + len(primes)
        q = rng.uniform(0, d + 2)
        sv = T.singular_values()
        sv_inv = tuple(sorted((1 / a for a in sv), reverse=True))
        assert psi(q, sv) == pytest.approx(
            1.0 / phi(q, sv_inv, allow_expanding=True), rel=1e-11)
