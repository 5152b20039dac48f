"""Fixed-precision arithmetic in the p-adic fields Q_p.

A nonzero element is stored as  p**valuation * u  where the unit part u is
known to ``precision`` significant base-p digits (relative precision).  The
first digit of u is always nonzero, so the valuation is fully extracted and
the normalised absolute value is exactly p**(-valuation).

Precision semantics: binary operations carry the minimum absolute precision
of their operands, and cancellation in add/sub shortens the digit vector
instead of fabricating low-order digits.  A sum whose known digits all cancel
is returned as the canonical exact zero (valuation conventionally infinite,
stored as the ``is_zero`` flag).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

DEFAULT_PRECISION = 64

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact far beyond 64-bit inputs)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def padic_valuation(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer."""
    if n == 0:
        raise ValueError("the valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicNumber:
    """Element of Q_p: prime, valuation, and the digits of the unit part."""

    prime: int
    valuation: int
    digits: tuple[int, ...]
    is_zero: bool = False

    def __post_init__(self) -> None:
        if self.prime < 2:
            raise ValueError(f"prime must be >= 2, got {self.prime}")
        if self.is_zero:
            if self.digits or self.valuation != 0:
                raise ValueError("canonical zero carries no digits and valuation 0")
            return
        if not self.digits:
            raise ValueError("a nonzero element needs at least one digit")
        if self.digits[0] == 0:
            raise ValueError("canonical form requires digits[0] != 0")
        if any(d < 0 or d >= self.prime for d in self.digits):
            raise ValueError(f"digits must lie in [0, {self.prime})")

    # -- basic queries ---------------------------------------------------

    @property
    def precision(self) -> int:
        """Number of significant digits of the unit part."""
        return len(self.digits)

    def unit_value(self) -> int:
        """The unit part as an integer in [0, p**precision)."""
        u = 0
        for d in reversed(self.digits):
            u = u * self.prime + d
        return u

    def norm(self) -> Fraction:
        """Normalised absolute value p**(-valuation); 0 for zero."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.prime) ** (-self.valuation)

    def residue(self) -> int:
        """x mod p for x in Z_p."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError("element lies outside Z_p (negative valuation)")
        return self.digits[0] if self.valuation == 0 else 0

    def coset_rep(self, m: int) -> Fraction:
        """Canonical representative of x + p**m Z_p in [0, p**m)."""
        if self.is_zero:
            return Fraction(0)
        if self.valuation + self.precision < m:
            raise ValueError(
                f"insufficient precision to resolve cosets of p^{m} Z_p "
                f"(known up to p^{self.valuation + self.precision})")
        value = Fraction(self.prime) ** self.valuation * self.unit_value()
        return value % (self.prime ** m)

    def truncate(self, precision: int) -> "PadicNumber":
        """Drop to at most ``precision`` significant digits."""
        if precision < 1:
            raise ValueError("precision must be >= 1")
        if self.is_zero or precision >= self.precision:
            return self
        return PadicNumber(self.prime, self.valuation, self.digits[:precision])

    # -- arithmetic ------------------------------------------------------

    def _require_compatible(self, other: "PadicNumber") -> None:
        if not isinstance(other, PadicNumber):
            raise TypeError(f"expected PadicNumber, got {type(other).__name__}")
        if other.prime != self.prime:
            raise ValueError(f"prime mismatch: {self.prime} vs {other.prime}")

    def __add__(self, other: "PadicNumber") -> "PadicNumber":
        self._require_compatible(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p = self.prime
        v = min(self.valuation, other.valuation)
        abs_prec = min(self.valuation + self.precision,
                       other.valuation + other.precision)
        k = abs_prec - v
        modulus = p ** k
        total = (self.unit_value() * p ** (self.valuation - v)
                 + other.unit_value() * p ** (other.valuation - v)) % modulus
        if total == 0:
            # every digit known at this precision cancelled
            return padic_zero(p)
        shift = padic_valuation(total, p)
        return _from_unit(p, v + shift, total // p ** shift, k - shift)

    def __neg__(self) -> "PadicNumber":
        if self.is_zero:
            return self
        modulus = self.prime ** self.precision
        return _from_unit(self.prime, self.valuation,
                          modulus - self.unit_value(), self.precision)

    def __sub__(self, other: "PadicNumber") -> "PadicNumber":
        return self + (-other)

    def __mul__(self, other: "PadicNumber") -> "PadicNumber":
        self._require_compatible(other)
        if self.is_zero or other.is_zero:
            return padic_zero(self.prime)
        n = min(self.precision, other.precision)
        return _from_unit(self.prime, self.valuation + other.valuation,
                          self.unit_value() * other.unit_value(), n)

    def inv(self) -> "PadicNumber":
        if self.is_zero:
            raise ZeroDivisionError("cannot invert the p-adic zero")
        modulus = self.prime ** self.precision
        return _from_unit(self.prime, -self.valuation,
                          pow(self.unit_value(), -1, modulus), self.precision)

    def __truediv__(self, other: "PadicNumber") -> "PadicNumber":
        self._require_compatible(other)
        return self * other.inv()

    # -- rendering -------------------------------------------------------

    def digit_string(self) -> str:
        """Little-endian digit string; leading zeros encode valuation >= 0,
        a "v=k:" prefix encodes negative valuation."""
        if self.is_zero:
            return "0"
        sep = "" if self.prime <= 10 else " "
        unit = sep.join(str(d) for d in self.digits)
        if self.valuation >= 0:
            zeros = sep.join("0" for _ in range(self.valuation))
            return zeros + (sep if zeros and sep else "") + unit
        return f"v={self.valuation}:{unit}"

    def __str__(self) -> str:
        return self.digit_string()


def padic_zero(p: int) -> PadicNumber:
    return PadicNumber(p, 0, (), True)


def _digits_of(value: int, p: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        value, d = divmod(value, p)
        out.append(d)
    return tuple(out)


def _from_unit(p: int, valuation: int, unit: int, precision: int) -> PadicNumber:
    """Build from a unit integer coprime to p, reduced mod p**precision."""
    unit %= p ** precision
    return PadicNumber(p, valuation, _digits_of(unit, p, precision))


def from_rational(numerator: int, denominator: int = 1, p: int = 2,
                  precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """p-adic expansion of numerator/denominator to ``precision`` digits."""
    if denominator == 0:
        raise ZeroDivisionError("denominator must be nonzero")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    if numerator == 0:
        return padic_zero(p)
    vn = padic_valuation(numerator, p)
    vd = padic_valuation(denominator, p)
    modulus = p ** precision
    unit = (numerator // p ** vn) * pow(denominator // p ** vd, -1, modulus)
    return _from_unit(p, vn - vd, unit, precision)


def one(p: int, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    return from_rational(1, 1, p, precision)


def parse_digit_string(text: str, p: int,
                       valuation: int | None = None) -> PadicNumber:
    """Inverse of digit_string().  With ``valuation`` given, the digits are
    the unit part; otherwise leading zeros are read as the valuation."""
    text = text.strip()
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if text.startswith("v="):
        head, _, tail = text.partition(":")
        if valuation is not None:
            raise ValueError("valuation given twice")
        valuation = int(head[2:])
        text = tail
    digits = [int(c) for c in (text.split() if " " in text else text)]
    if any(d < 0 or d >= p for d in digits):
        raise ValueError(f"digit out of range for p={p}")
    if all(d == 0 for d in digits):
        return padic_zero(p)
    if valuation is None:
        lead = next(i for i, d in enumerate(digits) if d != 0)
        return PadicNumber(p, lead, tuple(digits[lead:]))
    lead = next(i for i, d in enumerate(digits) if d != 0)
    return PadicNumber(p, valuation + lead, tuple(digits[lead:]))


# -- polynomial root lifting ----------------------------------------------

def _poly_eval(coeffs: Sequence[int], x: int, modulus: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % modulus
    return acc


def _poly_derivative(coeffs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def hensel_lift(coeffs: Sequence[int], p: int, r: int,
                precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """The unique root x = r (mod p) of the integer polynomial ``coeffs``
    (ascending order), lifted by Newton iteration to ``precision``
    significant digits.

    Requires the simple-root condition f(r) = 0 and f'(r) != 0 mod p; the
    error message reports which half failed.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    cs = [int(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) < 2:
        raise ValueError("polynomial must be nonconstant")
    r %= p
    if _poly_eval(cs, r, p) != 0:
        raise ValueError(f"Hensel precondition failed: f({r}) != 0 (mod {p})")
    deriv = _poly_derivative(cs)
    if _poly_eval(deriv, r, p) == 0:
        raise ValueError(
            f"Hensel precondition failed: f'({r}) = 0 (mod {p}), root is not simple")
    if r == 0 and cs[0] == 0:
        return padic_zero(p)

    def lift(target_exp: int) -> int:
        exp, x = 1, r
        while exp < target_exp:
            exp = min(2 * exp, target_exp)
            modulus = p ** exp
            fx = _poly_eval(cs, x, modulus)
            fpx = _poly_eval(deriv, x, modulus)
            x = (x - fx * pow(fpx, -1, modulus)) % modulus
        return x

    # the root's valuation is fixed but unknown up front; one relift suffices
    target = precision + 1
    for _ in range(4):
        x = lift(target)
        v = padic_valuation(x, p)
        if target - v >= precision:
            return _from_unit(p, v, x // p ** v, precision)
        target = precision + v + 1
    raise ArithmeticError("root valuation did not stabilise")  # unreachable


def cantor_embed(x: PadicNumber, base: int | None = None) -> float:
    """Digit-series embedding of Z_p into [0, 1]: sum of s_j * base**(-j-1)
    over the absolute digit sequence.  base = p maps onto the full interval;
    base > p (e.g. 2p-1) leaves Cantor gaps."""
    if x.is_zero:
        return 0.0
    if x.valuation < 0:
        raise ValueError("element lies outside Z_p (negative valuation)")
    b = x.prime if base is None else base
    if b < x.prime:
        raise ValueError(f"embedding base must be >= p = {x.prime}")
    total = 0.0
    scale = 1.0
    for _ in range(x.valuation):
        scale /= b
    for d in x.digits:
        scale /= b
        total += d * scale
    return total
