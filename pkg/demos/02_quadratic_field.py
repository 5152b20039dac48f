"""Exact arithmetic in Q(sqrt(17)) and its two embeddings.

The worked example lives on two numbers kappa = (3-sqrt(17))/2 and
lam = (3+sqrt(17))/2, the roots of x^2 - 3x - 2.  They are kept exact so
every later identity (kappa*lam = -2, |kappa| = 2/lam, ...) is checked in
integer arithmetic, while the real and 2-adic embeddings are produced on
demand.
"""


from mixedifs import QuadraticNumber, sqrt_from_embedding

kappa = QuadraticNumber(3, -1, 2, 17)
lam = QuadraticNumber(3, 1, 2, 17)

print("kappa + lam =", (kappa + lam).as_fraction())
print("kappa * lam =", (kappa * lam).as_fraction())
print("|kappa| == 2/lam exactly:", abs(kappa) == 2 / lam)

print("\nreal embeddings:")
print("  kappa ->", kappa.embed_real())
print("  lam   ->", lam.embed_real())

# The 2-adic side: the minimal polynomial x^2 - 3x - 2 is separable mod 2,
# and the selector (the residue of the wanted root) picks the conjugate.
img = lam.embed_padic(p=2, selector=0, precision=16)
print("\n2-adic image of lam (selector 0):", img.digit_string()[:10], "...")
print("its norm:", img.norm())

# Flipping the selector lands on the other embedding, which sends lam to
# the image of kappa (a 2-adic unit).
other = lam.embed_padic(p=2, selector=1, precision=16)
print("selector 1 instead gives norm:", other.norm())

# One square root of 17 pins down a whole consistent embedding.
s = sqrt_from_embedding(lam, img)
print("\nsqrt(17) branch starts:", s.digit_string()[:10], "...")
print("(s^2 - 17) vanishes:", (s * s - QuadraticNumber(17, 0, 1, 17)
                               .embed_padic(2, 0, 16)).is_zero)
print("kappa through the same branch:",
      kappa.embed_padic_with_root(s).digit_string()[:10], "...")

half_lam = lam / 2
print("\nlam/2 =", half_lam, "with minimal polynomial",
      half_lam.minimal_polynomial())
