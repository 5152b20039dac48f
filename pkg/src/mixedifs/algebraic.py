"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

Elements are (a + b*sqrt(d))/c in lowest terms with c > 0 and d squarefree.
Each element carries both archimedean data (embed_real, exact sign tests via
the conjugate trick) and non-archimedean data: embed_padic picks a conjugate
root of the minimal polynomial by its residue mod p and lifts it with Hensel's
lemma, while embed_padic_with_root applies a fixed p-adic square root of d so
that a whole family of constants shares one embedding.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .padic import DEFAULT_PRECISION, PadicNumber, from_rational, hensel_lift


def _squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class QuadraticNumber:
    """(a + b*sqrt(d))/c with gcd(a, b, c) = 1, c > 0, d squarefree > 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        a, b, c, d = self.a, self.b, self.c, self.d
        if c == 0:
            raise ZeroDivisionError("denominator c must be nonzero")
        if d <= 1 or not _squarefree(d):
            raise ValueError(f"d must be squarefree and > 1, got {d}")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(abs(a), abs(b)), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rational(cls, value, d: int) -> "QuadraticNumber":
        q = Fraction(value)
        return cls(q.numerator, 0, q.denominator, d)

    @classmethod
    def sqrt_of(cls, d: int) -> "QuadraticNumber":
        return cls(0, 1, 1, d)

    # -- queries -------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError("element is irrational")
        return Fraction(self.a, self.c)

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.c, self.d)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def field_norm(self) -> Fraction:
        """x * conj(x), a rational."""
        return Fraction(self.a * self.a - self.b * self.b * self.d,
                        self.c * self.c)

    def sign(self) -> int:
        """Exact sign, no floating point."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 d (equality impossible:
        # d squarefree > 1 has irrational square root)
        if a * a > b * b * self.d:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- arithmetic ------------------------------------------------------------

    def _align(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d == self.d:
                return other
            if other.b == 0:
                return QuadraticNumber(other.a, 0, other.c, self.d)
            if self.b == 0:
                raise _Realign(other.d)
            raise ValueError(f"field mismatch: sqrt({self.d}) vs sqrt({other.d})")
        if isinstance(other, int):
            return QuadraticNumber(other, 0, 1, self.d)
        if isinstance(other, Fraction):
            return QuadraticNumber(other.numerator, 0, other.denominator, self.d)
        return None

    def _binop(self, other, op):
        try:
            rhs = self._align(other)
        except _Realign as move:
            return op(QuadraticNumber(self.a, 0, self.c, move.d), other)
        if rhs is None:
            return NotImplemented
        return op(self, rhs)

    def __add__(self, other):
        return self._binop(other, lambda x, y: QuadraticNumber(
            x.a * y.c + y.a * x.c, x.b * y.c + y.b * x.c, x.c * y.c, x.d))

    __radd__ = __add__

    def __neg__(self) -> "QuadraticNumber":
        return QuadraticNumber(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        return self._binop(other, lambda x, y: x + (-y))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        return self._binop(other, lambda x, y: QuadraticNumber(
            x.a * y.a + x.b * y.b * x.d, x.a * y.b + x.b * y.a, x.c * y.c, x.d))

    __rmul__ = __mul__

    def inv(self) -> "QuadraticNumber":
        if not self:
            raise ZeroDivisionError("cannot invert zero")
        return QuadraticNumber(self.c * self.a, -self.c * self.b,
                               self.a * self.a - self.b * self.b * self.d,
                               self.d)

    def __truediv__(self, other):
        return self._binop(other, lambda x, y: x * y.inv())

    def __rtruediv__(self, other):
        return self.inv() * other

    def __abs__(self) -> "QuadraticNumber":
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return self._binop(other, lambda x, y: (x - y).sign() < 0)

    def __le__(self, other):
        return self._binop(other, lambda x, y: (x - y).sign() <= 0)

    def __gt__(self, other):
        return self._binop(other, lambda x, y: (x - y).sign() > 0)

    def __ge__(self, other):
        return self._binop(other, lambda x, y: (x - y).sign() >= 0)

    # -- embeddings --------------------------------------------------------------

    def embed_real(self) -> float:
        """Image under the embedding sending sqrt(d) to the positive root."""
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def minimal_polynomial(self) -> tuple[int, ...]:
        """Primitive integer polynomial (ascending) vanishing at this element."""
        if self.b == 0:
            g = math.gcd(abs(self.a), self.c)
            return (-self.a // g, self.c // g)
        c0 = self.a * self.a - self.b * self.b * self.d
        c1 = -2 * self.a * self.c
        c2 = self.c * self.c
        g = math.gcd(math.gcd(abs(c0), abs(c1)), c2)
        return (c0 // g, c1 // g, c2 // g)

    def embed_padic(self, p: int, selector: int = 0,
                    precision: int = DEFAULT_PRECISION) -> PadicNumber:
        """Image in Q_p.  For irrational elements the selector is the residue
        mod p of the wanted conjugate root of the minimal polynomial."""
        if self.b == 0:
            return from_rational(self.a, self.c, p, precision)
        return hensel_lift(self.minimal_polynomial(), p, selector, precision)

    def embed_padic_with_root(self, sqrt_d: PadicNumber) -> PadicNumber:
        """Image under the embedding determined by a fixed p-adic sqrt(d)."""
        p = sqrt_d.prime
        n = sqrt_d.precision
        check = sqrt_d * sqrt_d - from_rational(self.d, 1, p, n)
        if not check.is_zero:
            raise ValueError(f"given element is not a square root of {self.d}")
        num = (from_rational(self.a, 1, p, n)
               + from_rational(self.b, 1, p, n) * sqrt_d)
        return num / from_rational(self.c, 1, p, n)

    def __repr__(self) -> str:
        return f"QuadraticNumber({self.a}, {self.b}, {self.c}, d={self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(Fraction(self.a, self.c))
        core = f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt({self.d})"
        return f"({core})/{self.c}" if self.c != 1 else f"({core})"


class _Realign(Exception):
    """Internal: retry a binary op with the rational side retagged."""

    def __init__(self, d: int):
        self.d = d


def sqrt_from_embedding(x: QuadraticNumber, image: PadicNumber) -> PadicNumber:
    """Recover the p-adic square root of d implied by x -> image,
    i.e. (c*image - a)/b."""
    if x.b == 0:
        raise ValueError("a rational element does not determine sqrt(d)")
    p, n = image.prime, image.precision
    num = (image * from_rational(x.c, 1, p, n)
           - from_rational(x.a, 1, p, n))
    return num / from_rational(x.b, 1, p, n)


_PAREN_FORM = re.compile(
    r"^\(\s*(-?\d+)\s*([+-])\s*(?:(\d+)\s*\*\s*)?sqrt\(\s*(\d+)\s*\)\s*\)"
    r"\s*(?:/\s*(\d+))?$")
_BARE_SQRT = re.compile(
    r"^(-?)(?:(\d+)\s*\*\s*)?sqrt\(\s*(\d+)\s*\)\s*(?:/\s*(\d+))?$")
_RATIONAL = re.compile(r"^(-?\d+)\s*(?:/\s*(\d+))?$")


def parse_quadratic(text: str, default_d: int = 2) -> QuadraticNumber:
    """Parse "(a+b*sqrt(D))/c" and its degenerate forms ("sqrt(D)", "a/c",
    "a").  Pure rationals get tagged with default_d."""
    s = text.strip()
    m = _PAREN_FORM.match(s)
    if m:
        a = int(m.group(1))
        b = int(m.group(3) or 1)
        if m.group(2) == "-":
            b = -b
        return QuadraticNumber(a, b, int(m.group(5) or 1), int(m.group(4)))
    m = _BARE_SQRT.match(s)
    if m:
        b = int(m.group(2) or 1)
        if m.group(1) == "-":
            b = -b
        return QuadraticNumber(0, b, int(m.group(4) or 1), int(m.group(3)))
    m = _RATIONAL.match(s)
    if m:
        return QuadraticNumber(int(m.group(1)), 0, int(m.group(2) or 1),
                               default_d)
    raise ValueError(f"cannot parse quadratic literal: {text!r}")
