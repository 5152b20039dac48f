"""p-adic core: expansions, arithmetic, Hensel lifting, Cantor embedding."""

import math
import random
from fractions import Fraction

import pytest

from mixedifs.padic import (
    PadicNumber,
    cantor_embed,
    from_rational,
    hensel_lift,
    is_prime,
    one,
    padic_zero,
    parse_digit_string,
)


def long_division_digits(num, den, p, n):
    """Independent oracle: digit-by-digit p-adic long division of num/den
    (den coprime to p), returning the first n digits of the Z_p expansion."""
    digits = []
    inv_den = pow(den, -1, p)
    for _ in range(n):
        d = (num * inv_den) % p
        digits.append(d)
        num = (num - d * den) // p
    return digits


def random_padic(rng, p, max_prec=12):
    n = rng.randint(1, max_prec)
    digits = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(n - 1)]
    return PadicNumber(p, rng.randint(-5, 5), tuple(digits))


# -- expansions --------------------------------------------------------------


def test_power_of_p():
    x = from_rational(4, 1, 2, 5)
    assert x.valuation == 2
    assert x.digits == (1, 0, 0, 0, 0)


def test_minus_one_all_ones():
    x = from_rational(-1, 1, 2, 5)
    assert x.valuation == 0
    assert x.digits == (1, 1, 1, 1, 1)
    # adding one must cancel every known digit
    assert (x + one(2, 5)).is_zero


def test_one_third_long_division_oracle():
    x = from_rational(1, 3, 2, 6)
    assert x.valuation == 0
    assert list(x.digits) == long_division_digits(1, 3, 2, 6)
    assert list(x.digits) == [1, 1, 0, 1, 0, 1]
    # 3x = 1 (mod 2^6)
    assert (3 * x.unit_value()) % 2 ** 6 == 1


def test_round_trip_random_rationals():
    rng = random.Random(7)
    for _ in range(300):
        p = rng.choice([2, 3, 5, 7])
        num = rng.randint(-999, 999) or 1
        den = rng.randint(1, 999)
        while den % p == 0:
            den = rng.randint(1, 999)
        n = rng.randint(2, 30)
        x = from_rational(num, den, p, n)
        assert x.valuation >= 0 or num % p ** (-x.valuation) != 0
        if x.valuation >= 0:
            value = x.unit_value() * p ** x.valuation
            assert (den * value - num) % p ** (x.valuation + n) == 0


def test_from_rational_errors():
    with pytest.raises(ZeroDivisionError):
        from_rational(1, 0, 2, 5)
    with pytest.raises(ValueError):
        from_rational(1, 2, 4, 5)  # 4 is not prime


# -- arithmetic --------------------------------------------------------------


def test_add_inverse_is_zero():
    x = from_rational(7, 5, 3, 8)
    assert (x + (-x)).is_zero


def test_mul_inverse_pair():
    x = from_rational(1, 3, 2, 6)
    y = from_rational(3, 1, 2, 6)
    assert x * y == one(2, 6)
    assert x.inv() == y


def test_prime_mismatch():
    with pytest.raises(ValueError):
        from_rational(1, 1, 2, 4) + from_rational(1, 1, 3, 4)


def test_inversion_of_zero():
    with pytest.raises(ZeroDivisionError):
        padic_zero(2).inv()


def test_cancellation_shortens_precision():
    # (1 + p^3 u) - 1 has valuation 3 and only the top digits left
    x = from_rational(1 + 8 * 5, 1, 2, 8)
    y = one(2, 8)
    z = x - y
    assert z.valuation == 3
    assert z.precision == 5


def test_norms():
    assert padic_zero(2).norm() == 0
    assert from_rational(1, 4, 2, 6).norm() == 4
    assert from_rational(12, 1, 2, 6).norm() == Fraction(1, 4)


def test_ultrametric_and_multiplicativity():
    rng = random.Random(13)
    for _ in range(500):
        p = rng.choice([2, 3, 5])
        x, y = random_padic(rng, p), random_padic(rng, p)
        assert (x + y).norm() <= max(x.norm(), y.norm())
        assert (x * y).norm() == x.norm() * y.norm()


# -- Hensel lifting -----------------------------------------------------------


POLY = (-2, -3, 1)  # x^2 - 3x - 2, ascending coefficients


def test_hensel_root_digit_string():
    root = hensel_lift(POLY, 2, 0, 5)
    assert root.valuation == 1
    assert root.digits[:4] == (1, 1, 0, 1)
    assert root.digit_string()[:5] == "01101"
    assert root.norm() == Fraction(1, 2)


def test_hensel_conjugate_and_vieta():
    n = 20
    r0 = hensel_lift(POLY, 2, 0, n)
    r1 = hensel_lift(POLY, 2, 1, n)
    product = r0 * r1
    expected = from_rational(-2, 1, 2, n)
    assert product.valuation == expected.valuation
    assert product.digits[:18] == expected.digits[:18]
    # and the sum is 3
    total = r0 + r1
    three = from_rational(3, 1, 2, n)
    assert total.valuation == three.valuation
    assert total.digits[:18] == three.digits[:18]


def test_hensel_residual_random():
    rng = random.Random(23)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        # build f = (x - a)(x - b) with a simple root a mod p
        a = rng.randint(0, 10 * p)
        b = rng.randint(0, 10 * p)
        if (a - b) % p == 0:
            b += 1
        coeffs = (a * b, -(a + b), 1)
        n = rng.randint(4, 40)
        root = hensel_lift(coeffs, p, a % p, n)
        if root.is_zero:
            assert a * b == 0
            continue
        value = root.unit_value() * p ** root.valuation
        f_val = value * value - (a + b) * value + a * b
        assert f_val % p ** (root.valuation + n) == 0


def test_hensel_rejects_non_simple_roots():
    with pytest.raises(ValueError, match="f'"):
        hensel_lift((-17, 0, 1), 2, 1, 5)  # f'(1) = 2 = 0 mod 2
    with pytest.raises(ValueError, match=r"f\("):
        hensel_lift(POLY, 5, 1, 5)  # f(1) = -4 != 0 mod 5


def test_hensel_exact_zero_root():
    assert hensel_lift((0, 1, 1), 3, 0, 6).is_zero


# -- Cantor embedding ---------------------------------------------------------


def test_embed_zero():
    assert cantor_embed(padic_zero(2)) == 0.0


def test_embed_minus_one_geometric_series():
    x = from_rational(-1, 1, 2, 60)
    # oracle: sum of 2^-j-1 = 1 - 2^-60, indistinguishable from 1 in float64
    assert cantor_embed(x, 2) == 1.0


def test_embed_hensel_root():
    root = hensel_lift(POLY, 2, 0, 4)
    assert cantor_embed(root, 2) == pytest.approx(0.40625, abs=0)


def test_embed_requires_integer():
    with pytest.raises(ValueError):
        cantor_embed(from_rational(1, 2, 2, 4))


def test_embed_monotone_and_lipschitz():
    rng = random.Random(31)
    for _ in range(400):
        p = rng.choice([2, 3])
        n = rng.randint(1, 10)
        dx = [rng.randrange(p) for _ in range(n)]
        dy = [rng.randrange(p) for _ in range(n)]
        x = parse_digit_string("".join(map(str, dx)), p)
        y = parse_digit_string("".join(map(str, dy)), p)
        ex, ey = cantor_embed(x, p), cantor_embed(y, p)
        if dx <= dy:
            assert ex <= ey + 1e-15
        diff = float((x - y).norm()) if not (x - y).is_zero else 0.0
        assert abs(ex - ey) <= diff + 1e-15


# -- digit strings ------------------------------------------------------------


def test_digit_string_round_trip():
    rng = random.Random(37)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        x = random_padic(rng, p)
        assert parse_digit_string(x.digit_string(), p) == x
    assert parse_digit_string("0", 2).is_zero
    assert padic_zero(3).digit_string() == "0"


def test_digit_string_large_prime_spaces():
    x = from_rational(23, 1, 11, 3)
    assert x.digit_string() == "1 2 0"
    assert parse_digit_string(x.digit_string(), 11) == x


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(2 ** 61 + 1)
