"""The product space R x Q_2: metric, boxes, Haar measure, diagonal maps.

Distances take the maximum over coordinates (with the normalized p-adic
absolute value on the Q_2 side); measurable boxes are products of intervals
and balls c + 2^m Z_2, and diagonal affine maps send boxes to boxes while
scaling their measure by the product of the singular values.
"""


from mixedifs import (
    AffineMap,
    Box,
    DiagonalMap,
    Point,
    SpaceSignature,
    diameter,
    distance,
    from_rational,
    haar_measure,
    padic_zero,
)

sig = SpaceSignature(r=1, primes=(2,))
print("metric dimension of R x Q_2:", sig.metric_dim)

x = Point(reals=(0.0,), padics=(padic_zero(2),))
y = Point(reals=(0.25,), padics=(from_rational(4, 1, 2, 8),))
print("d((0,0), (0.25, 4)) =", distance(x, y), " (|4|_2 = 1/4)")

unit = Box(intervals=((0, 1),), balls=((padic_zero(2), 0),))
print("\nunit box [0,1] x Z_2: diameter", diameter(unit),
      " measure", haar_measure(unit))
half = Box(intervals=((0, 1),), balls=((padic_zero(2), 1),))
print("[0,1] x 2Z_2: measure", haar_measure(half))

# The example contraction T(x1, x2) = (kappa*x1, lam*x2): the second
# coordinate contracts 2-adically even though lam is 3.56... as a real.
from mixedifs import example_main, uniform_linear

T = uniform_linear(example_main(24))
print("\nsingular values of T:", T.singular_values())
print("contracting:", T.is_contracting(), " non-singular:", T.is_nonsingular())

f = AffineMap(T, Point(reals=(1.0,), padics=(from_rational(1, 1, 2, 24),)))
image = f.apply_box(unit)
print("image of the unit box:")
print("  real interval:", image.intervals[0])
print("  ball exponent:", image.balls[0][1], "(radius halved)")
print("  measure:", float(haar_measure(image)), "=",
      float(haar_measure(unit)), "*", "*".join(f"{s:.4f}" for s in T.singular_values()))
