"""Exact scalars: rationals, the field extension Q + Q*sqrt(pi), decimal rendering.

Rationals are plain :class:`fractions.Fraction` values. Every Gaussian moment
is either rational or a rational multiple of ``sqrt(pi)``, so sums of moments
live in the two-dimensional Q-vector space spanned by ``1`` and ``sqrt(pi)``;
:class:`PiScalar` models exactly that space.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational

BigRational = Fraction

# Extra decimal places used when approximating sqrt(pi) for rendering.
GUARD_DIGITS = 4


def rat_add(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(x) + Fraction(y)


def rat_mul(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(x) * Fraction(y)


def rat_neg(x: Fraction) -> Fraction:
    return -Fraction(x)


def rat_div(x: Fraction, y: Fraction) -> Fraction:
    """Exact quotient; raises ``ZeroDivisionError`` when ``y == 0``."""
    y = Fraction(y)
    if y == 0:
        raise ZeroDivisionError("rational division by zero")
    return Fraction(x) / y


@dataclass(frozen=True)
class PiScalar:
    """The number ``rat + pi * sqrt(pi)`` with rational components.

    Since ``sqrt(pi)`` is irrational the representation is unique, so
    equality and the zero test are componentwise and exact.  Products of two
    values that both carry a ``sqrt(pi)`` part would leave the space and are
    rejected.
    """

    rat: Fraction = Fraction(0)
    pi: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "pi", Fraction(self.pi))

    @classmethod
    def sqrt_pi(cls) -> PiScalar:
        return cls(0, 1)

    def is_zero(self) -> bool:
        return self.rat == 0 and self.pi == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        if isinstance(other, PiScalar):
            return PiScalar(self.rat + other.rat, self.pi + other.pi)
        if isinstance(other, Rational):
            return PiScalar(self.rat + other, self.pi)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> PiScalar:
        return PiScalar(-self.rat, -self.pi)

    def __sub__(self, other):
        if isinstance(other, (PiScalar, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return PiScalar(self.rat * other, self.pi * other)
        if isinstance(other, PiScalar):
            if self.pi == 0:
                return other * self.rat
            if other.pi == 0:
                return self * other.rat
            raise TypeError("product of two sqrt(pi)-valued scalars leaves Q + Q*sqrt(pi)")
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("PiScalar division by zero")
            return PiScalar(self.rat / other, self.pi / other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, PiScalar):
            return self.rat == other.rat and self.pi == other.pi
        if isinstance(other, Rational):
            return self.pi == 0 and self.rat == other
        return NotImplemented

    def __hash__(self):
        return hash((self.rat, self.pi))

    def __float__(self) -> float:
        return float(self.rat + self.pi * sqrt_pi_digits(20))

    def __repr__(self) -> str:
        return f"PiScalar({self.rat}, {self.pi})"

    def __str__(self) -> str:
        if self.pi == 0:
            return str(self.rat)
        if self.rat == 0:
            return f"{self.pi}*sqrt(pi)"
        sign = "-" if self.pi < 0 else "+"
        return f"{self.rat} {sign} {abs(self.pi)}*sqrt(pi)"

    def approx(self, places: int) -> tuple[Fraction, Fraction]:
        """Rational approximation and a strict error bound for it."""
        r = sqrt_pi_digits(places)
        return self.rat + self.pi * r, abs(self.pi) * Fraction(1, 10 ** (places + 2))


def pi_add(x: PiScalar, y: PiScalar) -> PiScalar:
    return x + y


def pi_scale(q: Fraction, x: PiScalar) -> PiScalar:
    return x * Fraction(q)


def _arctan_inv(n: int, scale: int) -> int:
    # Fixed-point arctan(1/n) * scale; each term truncates by < 1 unit twice.
    total = 0
    power = scale // n
    n2 = n * n
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k % 2 else term
        power //= n2
        k += 1
    return total


def _pi_scaled(places: int) -> int:
    """Integer within 1 of ``pi * 10**places`` (Machin's formula)."""
    guard = 10
    scale = 10 ** (places + guard)
    pi = 16 * _arctan_inv(5, scale) - 4 * _arctan_inv(239, scale)
    # truncation error is at most 2 units per series term, a few hundred terms
    # per thousand digits, far below 10**guard
    return (pi + 10**guard // 2) // 10**guard


@lru_cache(maxsize=64)
def sqrt_pi_digits(d: int) -> Fraction:
    """Rational ``r`` with ``|r - sqrt(pi)| < 10**-(d + 2)``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    m = d + 4
    # |P - pi*10^(2m)| < 1, so isqrt(P) is within ~1 unit of sqrt(pi)*10^m
    s = isqrt(_pi_scaled(2 * m))
    return Fraction(s, 10**m)


TRUNCATE = "truncate"
HALF_AWAY = "half-away"
ROUNDING_MODES = (TRUNCATE, HALF_AWAY)


def quantize(q: Fraction, mode: str = TRUNCATE) -> int:
    """Integer nearest ``q`` under ``mode`` (toward zero, or half away from zero)."""
    if mode == TRUNCATE:
        n = abs(q.numerator) // q.denominator
    elif mode == HALF_AWAY:
        n = (abs(q.numerator) * 2 + q.denominator) // (2 * q.denominator)
    else:
        raise ValueError(f"unknown rounding mode {mode!r}")
    return -n if q < 0 else n


def format_fixed(n: int, digits: int) -> str:
    """Integer ``n`` read as ``n / 10**digits``; no sign is printed for zero."""
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def to_decimal(x: PiScalar | Fraction | int, digits: int, rounding: str = TRUNCATE) -> str:
    """Render ``x`` with exactly ``digits`` decimal places.

    Exact zero renders as ``"0"``.  The default drops excess digits (rounds
    toward zero); ``rounding="half-away"`` rounds to nearest.  The ``sqrt(pi)``
    approximation is refined until both ends of its error interval give the
    same digits, so the output is exact for the chosen mode.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if not isinstance(x, PiScalar):
        x = PiScalar(x, 0)
    if x.is_zero():
        return "0"
    scale = 10**digits
    if x.pi == 0:
        return format_fixed(quantize(x.rat * scale, rounding), digits)
    magnitude = len(str(abs(x.pi.numerator) // x.pi.denominator))
    places = digits + GUARD_DIGITS + magnitude
    while True:
        value, err = x.approx(places)
        lo = quantize((value - err) * scale, rounding)
        hi = quantize((value + err) * scale, rounding)
        if lo == hi:
            return format_fixed(lo, digits)
        places += 8
