"""The product space R^r x C^s x Q_p1 x ... x Q_pk.

Points, the maximum metric (real and imaginary parts of complex coordinates
enter as separate components), measurable boxes with exact Haar measure, and
diagonal affine contractions with their singular values.

Boxes are products of real intervals, complex re/im rectangles, and p-adic
balls center + p**m Z_p.  Diagonal maps send boxes to boxes; on a complex
coordinate with a non-axis multiplier the image is the bounding box of the
rotated rectangle (a conservative over-cover — exact whenever the multiplier
is real or purely imaginary).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebraic import QuadraticNumber
from .padic import DEFAULT_PRECISION, PadicNumber, from_rational, is_prime, padic_zero

Scalar = int | float | Fraction


@dataclass(frozen=True)
class SpaceSignature:
    """r real factors, s complex factors, one p-adic factor per prime."""

    r: int = 0
    s: int = 0
    primes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", tuple(self.primes))
        if self.r < 0 or self.s < 0:
            raise ValueError("factor counts must be nonnegative")
        for p in self.primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        if self.r + 2 * self.s + len(self.primes) < 1:
            raise ValueError("the space must have at least one factor")

    @property
    def k(self) -> int:
        return len(self.primes)

    @property
    def metric_dim(self) -> int:
        """r + 2s + k, the Hausdorff dimension of the whole space."""
        return self.r + 2 * self.s + self.k


@dataclass(frozen=True)
class Point:
    reals: tuple[float, ...] = ()
    complexes: tuple[complex, ...] = ()
    padics: tuple[PadicNumber, ...] = ()
    # optional exact backing, one QuadraticNumber per real+padic coordinate
    exact: tuple[QuadraticNumber, ...] | None = field(default=None, compare=False)

    def matches(self, sig: SpaceSignature) -> bool:
        return (len(self.reals) == sig.r and len(self.complexes) == sig.s
                and tuple(x.prime for x in self.padics) == sig.primes)


def zero_point(sig: SpaceSignature) -> Point:
    return Point((0.0,) * sig.r, (0j,) * sig.s,
                 tuple(padic_zero(p) for p in sig.primes))


@dataclass(frozen=True)
class Box:
    """Product of intervals, re/im rectangles, and balls center + p**m Z_p."""

    intervals: tuple[tuple[Scalar, Scalar], ...] = ()
    rects: tuple[tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]], ...] = ()
    balls: tuple[tuple[PadicNumber, int], ...] = ()

    def __post_init__(self) -> None:
        for lo, hi in self.intervals:
            if hi < lo:
                raise ValueError(f"interval [{lo}, {hi}] is reversed")
        for (x0, x1), (y0, y1) in self.rects:
            if x1 < x0 or y1 < y0:
                raise ValueError("rectangle sides are reversed")

    def matches(self, sig: SpaceSignature) -> bool:
        return (len(self.intervals) == sig.r and len(self.rects) == sig.s
                and tuple(c.prime for c, _ in self.balls) == sig.primes)


def _check_point_pair(x: Point, y: Point) -> None:
    if (len(x.reals) != len(y.reals) or len(x.complexes) != len(y.complexes)
            or tuple(p.prime for p in x.padics) != tuple(p.prime for p in y.padics)):
        raise ValueError("points live in different spaces")


def distance(x: Point, y: Point) -> float:
    """Maximum metric; complex coordinates contribute their re/im parts
    separately, p-adic coordinates their normalised absolute value."""
    _check_point_pair(x, y)
    best = 0.0
    for a, b in zip(x.reals, y.reals):
        best = max(best, abs(a - b))
    for a, b in zip(x.complexes, y.complexes):
        best = max(best, abs(a.real - b.real), abs(a.imag - b.imag))
    for a, b in zip(x.padics, y.padics):
        best = max(best, float((a - b).norm()))
    return best


def diameter(box: Box) -> Scalar:
    """Largest component extent: interval length, rectangle max side,
    ball radius p**(-m).  Exact when the inputs are exact."""
    candidates: list[Scalar] = [0]
    for lo, hi in box.intervals:
        candidates.append(hi - lo)
    for (x0, x1), (y0, y1) in box.rects:
        candidates.append(max(x1 - x0, y1 - y0))
    for center, m in box.balls:
        candidates.append(Fraction(center.prime) ** (-m))
    return max(candidates)


def haar_measure(box: Box) -> Scalar:
    """Product measure normalised to 1 on the unit interval and on Z_p;
    exact rational whenever the box data is exact."""
    out: Scalar = 1
    for lo, hi in box.intervals:
        out = out * (hi - lo)
    for (x0, x1), (y0, y1) in box.rects:
        out = out * (x1 - x0) * (y1 - y0)
    for center, m in box.balls:
        out = out * Fraction(center.prime) ** (-m)
    return out


def box_contains(outer: Box, inner: Box, slack: float = 0.0) -> bool:
    """Componentwise containment test (with additive slack on the
    archimedean coordinates)."""
    for (olo, ohi), (ilo, ihi) in zip(outer.intervals, inner.intervals):
        if ilo < olo - slack or ihi > ohi + slack:
            return False
    for (ox, oy), (ix, iy) in zip(outer.rects, inner.rects):
        if ix[0] < ox[0] - slack or ix[1] > ox[1] + slack:
            return False
        if iy[0] < oy[0] - slack or iy[1] > oy[1] + slack:
            return False
    for (oc, om), (ic, im) in zip(outer.balls, inner.balls):
        if im < om:
            return False
        diff = ic - oc
        if not diff.is_zero and diff.valuation < om:
            return False
    return True


@dataclass(frozen=True)
class DiagonalMap:
    """Coordinatewise linear map x_i -> a_i * x_i."""

    reals: tuple[float, ...] = ()
    complexes: tuple[complex, ...] = ()
    padics: tuple[PadicNumber, ...] = ()
    exact: tuple[QuadraticNumber | None, ...] | None = field(default=None,
                                                             compare=False)

    @classmethod
    def identity(cls, sig: SpaceSignature,
                 precision: int = DEFAULT_PRECISION) -> "DiagonalMap":
        return cls((1.0,) * sig.r, (1 + 0j,) * sig.s,
                   tuple(from_rational(1, 1, p, precision) for p in sig.primes))

    def singular_values(self) -> tuple[float, ...]:
        """|a_i| for real, |a_j| twice for complex, ||a_m||_p for p-adic,
        sorted in descending order."""
        vals = [abs(a) for a in self.reals]
        for z in self.complexes:
            vals += [abs(z), abs(z)]
        vals += [float(x.norm()) for x in self.padics]
        return tuple(sorted(vals, reverse=True))

    def is_contracting(self) -> bool:
        sv = self.singular_values()
        return bool(sv) and sv[0] < 1

    def is_nonsingular(self) -> bool:
        sv = self.singular_values()
        return bool(sv) and sv[-1] > 0

    def compose(self, other: "DiagonalMap") -> "DiagonalMap":
        reals = tuple(a * b for a, b in zip(self.reals, other.reals))
        complexes = tuple(a * b for a, b in zip(self.complexes, other.complexes))
        padics = tuple(a * b for a, b in zip(self.padics, other.padics))
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = tuple(a * b if a is not None and b is not None else None
                          for a, b in zip(self.exact, other.exact))
        return DiagonalMap(reals, complexes, padics, exact)

    def power(self, n: int) -> "DiagonalMap":
        if n < 0:
            raise ValueError("negative powers are not supported")
        if n == 0:
            return DiagonalMap(
                (1.0,) * len(self.reals), (1 + 0j,) * len(self.complexes),
                tuple(from_rational(1, 1, x.prime, x.precision or DEFAULT_PRECISION)
                      for x in self.padics))
        out = self
        for _ in range(n - 1):
            out = out.compose(self)
        return out


@dataclass(frozen=True)
class AffineMap:
    """x -> T(x) + t with diagonal linear part T."""

    linear: DiagonalMap
    translate: Point

    def __call__(self, x: Point) -> Point:
        reals = tuple(a * v + t for a, v, t in
                      zip(self.linear.reals, x.reals, self.translate.reals))
        complexes = tuple(a * v + t for a, v, t in
                          zip(self.linear.complexes, x.complexes,
                              self.translate.complexes))
        padics = tuple(a * v + t for a, v, t in
                       zip(self.linear.padics, x.padics, self.translate.padics))
        return Point(reals, complexes, padics)

    def apply_box(self, box: Box) -> Box:
        intervals = []
        for a, (lo, hi), t in zip(self.linear.reals, box.intervals,
                                  self.translate.reals):
            pts = (a * lo + t, a * hi + t)
            intervals.append((min(pts), max(pts)))
        rects = []
        for z, ((x0, x1), (y0, y1)), t in zip(self.linear.complexes, box.rects,
                                              self.translate.complexes):
            corners = [z * complex(x, y) + t
                       for x in (x0, x1) for y in (y0, y1)]
            xs = [w.real for w in corners]
            ys = [w.imag for w in corners]
            rects.append(((min(xs), max(xs)), (min(ys), max(ys))))
        balls = []
        for a, (c, m), t in zip(self.linear.padics, box.balls,
                                self.translate.padics):
            if a.is_zero:
                raise ValueError("p-adic multiplier is zero; image is not a ball")
            balls.append((a * c + t, m + a.valuation))
        return Box(tuple(intervals), tuple(rects), tuple(balls))

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: x -> self(other(x))."""
        return AffineMap(self.linear.compose(other.linear),
                         self(other.translate))


def identity_affine(sig: SpaceSignature,
                    precision: int = DEFAULT_PRECISION) -> AffineMap:
    return AffineMap(DiagonalMap.identity(sig, precision), zero_point(sig))
