"""The two singular value functions and the identities behind the solvers.

phi(q) interpolates products of the largest singular values, psi(q) of the
smallest; both decrease strictly in q.  The dimension solvers live entirely
on four facts demonstrated here: submultiplicativity of phi,
supermultiplicativity of psi, the power identity, and phi/psi duality.
"""

import math

from mixedifs import example_main, phi, psi, uniform_linear

T = uniform_linear(example_main(24))
sv = T.singular_values()
print("singular values:", sv)

print("\nq      phi(q)      psi(q)")
for q in (0.0, 0.5, 1.0, 1.5, 2.0, 3.0):
    print(f"{q:3.1f}  {phi(q, sv):9.6f}  {psi(q, sv):9.6f}")

print("\nphi(2) = alpha1*alpha2 =", sv[0] * sv[1])
print("phi(3) uses the overflow branch:", phi(3.0, sv),
      "= (alpha1*alpha2)^(3/2) =", (sv[0] * sv[1]) ** 1.5)

# Composition: phi is submultiplicative, and exactly multiplicative for
# powers of one map (the engine of the closed-form solver).
sq = T.compose(T).singular_values()
q = 1.3
print("\nphi(q, T o T) =", phi(q, sq))
print("phi(q, T)^2   =", phi(q, sv) ** 2)

# Duality: psi of T is the reciprocal of phi of the inverse map.
sv_inv = tuple(sorted((1 / a for a in sv), reverse=True))
print("\npsi(q, T)            =", psi(q, sv))
print("1/phi(q, T^-1)       =", 1 / phi(q, sv_inv, allow_expanding=True))
