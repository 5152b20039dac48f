"""p-adic numbers from scratch: expansions, arithmetic, Hensel lifting.

The 2-adic world measures size by divisibility: a number is small when a
high power of 2 divides it.  This script walks through digit expansions,
the ultrametric absolute value, and the lifting of a polynomial root digit
by digit.
"""


from mixedifs import cantor_embed, from_rational, hensel_lift, padic_zero

# Rationals expand into digit series just like decimals, but running left
# to right in powers of p.
x = from_rational(1, 3, p=2, precision=12)
print("1/3 in Q_2:", x.digit_string(), " (norm", x.norm(), ")")
print("check: 3 * x has digits", (from_rational(3, 1, 2, 12) * x).digit_string())

# -1 is the all-ones sequence: adding 1 carries forever.
minus_one = from_rational(-1, 1, 2, 10)
print("-1 in Q_2:", minus_one.digit_string())
print("-1 + 1 is zero:", (minus_one + from_rational(1, 1, 2, 10)).is_zero)

# Negative valuation means a genuinely large number.
quarter = from_rational(1, 4, 2, 8)
print("1/4 rendered:", quarter.digit_string(), " norm:", quarter.norm())

# Hensel's lemma: a simple root mod p lifts to an exact p-adic root.
# x^2 - 3x - 2 has roots 0 and 1 mod 2; lifting r=0 gives the root that is
# divisible by 2 (norm 1/2).
root = hensel_lift((-2, -3, 1), p=2, r=0, precision=24)
print("\nroot of x^2-3x-2 with r=0:", root.digit_string()[:12], "...")
print("norm:", root.norm())
value = root.unit_value() * 2 ** root.valuation
print("f(root) mod 2^24:", (value * value - 3 * value - 2) % 2 ** 24)

# The same lemma refuses non-simple residues: for x^2 - 17 at p=2 the
# derivative 2x is always even.
try:
    hensel_lift((-17, 0, 1), 2, 1, 8)
except ValueError as exc:
    print("x^2 - 17 at p=2 rejected:", exc)

# Z_2 is a Cantor set; the digit series embeds it into [0, 1].
print("\nCantor embedding of the root:", cantor_embed(root, 2))
print("Cantor embedding of 0:", cantor_embed(padic_zero(2)))
print("with base 3 (gaps appear):", cantor_embed(root, 3))
