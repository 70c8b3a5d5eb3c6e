"""Finite Laurent series with integer coefficients.

A series ``sum a_n x**n`` is stored as two coefficient tuples: ``pos`` holds
``a_0, a_1, a_2, ...`` and ``neg`` holds ``a_-1, a_-2, ...``.  Both are kept
in canonical form (no trailing zeros), so structural equality is value
equality and ``LaurentSeries()`` is the zero series.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Mapping


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class LaurentSeries:
    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pos", _trim(self.pos))
        object.__setattr__(self, "neg", _trim(self.neg))

    # construction and inspection

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> LaurentSeries:
        """Build from an ``{exponent: coefficient}`` mapping."""
        if not terms:
            return cls()
        hi = max(max(terms), -1)
        lo = min(min(terms), 0)
        pos = [terms.get(n, 0) for n in range(0, hi + 1)]
        neg = [terms.get(-n, 0) for n in range(1, -lo + 1)]
        return cls(tuple(pos), tuple(neg))

    def terms(self) -> dict[int, int]:
        """Nonzero coefficients keyed by exponent."""
        out = {n: c for n, c in enumerate(self.pos) if c}
        out.update({-(i + 1): c for i, c in enumerate(self.neg) if c})
        return out

    def coefficient(self, n: int) -> int:
        if n >= 0:
            return self.pos[n] if n < len(self.pos) else 0
        i = -n - 1
        return self.neg[i] if i < len(self.neg) else 0

    def items(self) -> Iterator[tuple[int, int]]:
        """``(exponent, coefficient)`` pairs of nonzero terms, ascending."""
        return iter(sorted(self.terms().items()))

    def is_zero(self) -> bool:
        return not self.pos and not self.neg

    def __bool__(self) -> bool:
        return not self.is_zero()

    def lowest_exponent(self) -> int | None:
        if self.neg:
            return -len(self.neg)
        for n, c in enumerate(self.pos):
            if c:
                return n
        return None

    def highest_exponent(self) -> int | None:
        if self.pos:
            return len(self.pos) - 1
        for i, c in enumerate(self.neg):
            if c:
                return -(i + 1)
        return None

    # ring operations

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentSeries((other,))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        n = max(len(self.pos), len(other.pos))
        m = max(len(self.neg), len(other.neg))
        pos = [self.coefficient(i) + other.coefficient(i) for i in range(n)]
        neg = [self.coefficient(-i) + other.coefficient(-i) for i in range(1, m + 1)]
        return LaurentSeries(tuple(pos), tuple(neg))

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(tuple(-c for c in self.pos), tuple(-c for c in self.neg))

    def __sub__(self, other):
        if isinstance(other, (int, LaurentSeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentSeries(
                tuple(other * c for c in self.pos), tuple(other * c for c in self.neg)
            )
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return LaurentSeries()
        # dense convolution over the shifted coefficient arrays
        lo_a, a = self._dense()
        lo_b, b = other._dense()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return LaurentSeries._from_dense(lo_a + lo_b, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentSeries:
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentSeries((1,))
        for _ in range(k):
            result = result * self
        return result

    def _dense(self) -> tuple[int, list[int]]:
        lo = -len(self.neg)
        return lo, list(reversed(self.neg)) + list(self.pos)

    @staticmethod
    def _from_dense(lo: int, coeffs: list[int]) -> LaurentSeries:
        split = -lo
        if split <= 0:
            pos = [0] * (-split) + coeffs
            return LaurentSeries(tuple(pos), ())
        if split > len(coeffs):
            coeffs = coeffs + [0] * (split - len(coeffs))
        neg = list(reversed(coeffs[:split]))
        return LaurentSeries(tuple(coeffs[split:]), tuple(neg))

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by ``x**k``."""
        if self.is_zero():
            return self
        lo, coeffs = self._dense()
        return LaurentSeries._from_dense(lo + k, coeffs)

    def diff(self) -> LaurentSeries:
        return LaurentSeries.from_terms({n - 1: n * c for n, c in self.terms().items() if n})

    def content(self) -> int:
        """Positive gcd of all coefficients (0 for the zero series)."""
        g = 0
        for c in self.pos + self.neg:
            g = gcd(g, c)
        return g

    def gcd_normalize(self) -> LaurentSeries:
        g = self.content()
        if g <= 1:
            return self
        return LaurentSeries(tuple(c // g for c in self.pos), tuple(c // g for c in self.neg))

    def __call__(self, x: float) -> float:
        return eval_float(self, x)

    # rendering

    def __repr__(self) -> str:
        return f"L [{','.join(map(str, self.pos))}] [{','.join(map(str, self.neg))}]"

    def __str__(self) -> str:
        return render_text(self)

    def to_json(self) -> dict:
        return {"pos": list(self.pos), "neg": list(self.neg)}

    @classmethod
    def from_json(cls, data: Mapping | str) -> LaurentSeries:
        if isinstance(data, str):
            data = json.loads(data)
        for key in ("pos", "neg"):
            if not all(isinstance(c, int) and not isinstance(c, bool) for c in data[key]):
                raise ValueError(f"{key!r} must be a list of integers")
        series = cls(tuple(data["pos"]), tuple(data["neg"]))
        if list(series.pos) != list(data["pos"]) or list(series.neg) != list(data["neg"]):
            raise ValueError("series JSON is not in canonical form (trailing zeros)")
        return series


ZERO = LaurentSeries()
ONE = LaurentSeries((1,))
X = LaurentSeries((0, 1))


def monomial(n: int, c: int = 1) -> LaurentSeries:
    return LaurentSeries.from_terms({n: c}) if c else ZERO


def add(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    return f + g


def mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    return f * g


def neg(f: LaurentSeries) -> LaurentSeries:
    return -f


def scale(c: int, f: LaurentSeries) -> LaurentSeries:
    return f * c


def diff(f: LaurentSeries) -> LaurentSeries:
    return f.diff()


def gcd_normalize(f: LaurentSeries) -> LaurentSeries:
    """Divide by the positive gcd of the coefficients; signs are kept."""
    return f.gcd_normalize()


def lowest_exponent(f: LaurentSeries) -> int | None:
    return f.lowest_exponent()


def eval_float(f: LaurentSeries, x: float) -> float:
    if x == 0 and f.neg:
        raise ZeroDivisionError("cannot evaluate negative powers at x = 0")
    return float(sum(c * float(x) ** n for n, c in f.terms().items()))


def _power(n: int, latex: bool) -> str:
    if n == 1:
        return "x"
    return f"x^{{{n}}}" if latex else f"x^{n}"


def _term(n: int, c: int, latex: bool) -> str:
    mag = abs(c)
    if n == 0:
        return str(mag)
    if n > 0:
        return (str(mag) if mag != 1 else "") + _power(n, latex)
    if latex:
        return rf"\frac{{{mag}}}{{{_power(-n, latex)}}}"
    return f"{mag}/{_power(-n, latex)}"


def _render(f: LaurentSeries, latex: bool) -> str:
    if f.is_zero():
        return "0"
    # nonnegative powers ascending, then 1/x, 1/x^2, ...
    order = [(n, c) for n, c in enumerate(f.pos) if c]
    order += [(-(i + 1), c) for i, c in enumerate(f.neg) if c]
    parts = []
    for n, c in order:
        body = _term(n, c, latex)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def render_text(f: LaurentSeries) -> str:
    """Human-readable form, e.g. ``18x - 36x^3 + 8x^5 + 3/x``."""
    return _render(f, latex=False)


def render_latex(f: LaurentSeries) -> str:
    return _render(f, latex=True)
