"""Gaussian inner products, square-integrability and orthogonal-basis discovery.

Two families of measures are supported, selected by a single integer ``n``:

* ``n = 0``: the full line, ``int_{-inf}^{inf} h(x) exp(-x^2) dx``;
* ``n >= 1``: the radial measure in ``n`` dimensions,
  ``2 int_0^inf h(x) x^(n-1) exp(-x^2) dx``, with sphere-volume constants
  dropped (they cancel in every orthogonality test and normalized bracket).

Moments of both measures lie in ``Q + Q*sqrt(pi)``, so brackets of Laurent
series are computed exactly as :class:`~spiked.exactnum.PiScalar` values.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import count
from math import isqrt
from typing import Iterator, Sequence

from scipy import integrate

from .exactnum import TRUNCATE, HALF_AWAY, PiScalar, format_fixed, to_decimal
from .laurent import LaurentSeries
from .operators import StateLabel, wavefunction

NO_CONSISTENT_PATTERN = None


class NonIntegrable(ValueError):
    """The weighted product has a negative power of ``x``."""

    def __init__(self, exponent: int, what: str = "integrand"):
        self.exponent = exponent
        super().__init__(f"{what} is not integrable: contains x^{exponent}")


@dataclass(frozen=True)
class MeasureSpec:
    n: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")

    @property
    def linear(self) -> bool:
        return self.n == 0

    @property
    def volume_power(self) -> int:
        return max(self.n - 1, 0)

    def __str__(self) -> str:
        return "linear" if self.linear else f"radial N={self.n}"


LINEAR = MeasureSpec(0)


def radial(n: int) -> MeasureSpec:
    if n < 1:
        raise ValueError("radial dimension must be >= 1")
    return MeasureSpec(n)


def _spec(spec: MeasureSpec | int) -> MeasureSpec:
    return spec if isinstance(spec, MeasureSpec) else MeasureSpec(spec)


def _label(s) -> StateLabel:
    return s if isinstance(s, StateLabel) else StateLabel(*s)


@lru_cache(maxsize=None)
def _moment(linear: bool, m: int) -> PiScalar:
    if m == 0:
        return PiScalar.sqrt_pi()
    if m == 1:
        return PiScalar(0 if linear else 1, 0)
    return _moment(linear, m - 2) * Fraction(m - 1, 2)


def moment(spec: MeasureSpec | int, m: int) -> PiScalar:
    """Exact ``P_m``: the integral of ``x^m exp(-x^2)`` under ``spec``.

    The radial moment does not depend on the dimension; the volume element
    ``x^(n-1)`` is folded into the integrand by the callers.
    """
    if m < 0:
        raise NonIntegrable(m, "moment")
    return _moment(_spec(spec).linear, m)


def integrate_series(spec: MeasureSpec | int, h: LaurentSeries) -> PiScalar:
    """Exact integral of ``h(x) exp(-x^2)`` with the volume element applied."""
    spec = _spec(spec)
    h = h.shift(spec.volume_power)
    low = h.lowest_exponent()
    if low is not None and low < 0:
        raise NonIntegrable(low)
    total = PiScalar()
    for m, c in h.items():
        total += moment(spec, m) * c
    return total


def scalar_product(spec: MeasureSpec | int, f: LaurentSeries, g: LaurentSeries) -> PiScalar:
    return integrate_series(spec, f * g)


def is_physical(n: int, f: LaurentSeries) -> bool:
    """Whether ``f^2 x^(n-1)`` is free of negative powers (``n = 0``: linear)."""
    if f.is_zero():
        raise ValueError("the zero series is not a state")
    return 2 * f.lowest_exponent() + MeasureSpec(n).volume_power >= 0


def physical_pattern(n: int, l: int) -> Iterator[bool]:
    return (is_physical(n, wavefunction(l, k)) for k in count())


def even_rule(n: int, l: int) -> bool:
    """Even-``k`` states of oscillator ``l`` are admissible iff ``n >= 2l + 1``."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return n >= 2 * l + 1


def bracket_raw(spec: MeasureSpec | int, a, b) -> PiScalar:
    """Exact bracket of the (unnormalized) canonical wavefunctions ``a``, ``b``."""
    a, b = _label(a), _label(b)
    return scalar_product(spec, wavefunction(a.l, a.k), wavefunction(b.l, b.k))


def _purity(x: PiScalar) -> tuple[Fraction, int] | None:
    # x == c * sqrt(pi)**p for p in {0, 1}, or None when both parts are nonzero
    if x.pi == 0:
        return x.rat, 0
    if x.rat == 0:
        return x.pi, 1
    return None


def _quantize_sqrt(q: Fraction, rounding: str) -> int:
    # sqrt(q) for q >= 0 reduced to an integer exactly
    if rounding == TRUNCATE:
        return isqrt(q.numerator // q.denominator)
    if rounding == HALF_AWAY:
        # largest n with (2n - 1)^2 <= 4q
        return (isqrt((4 * q.numerator) // q.denominator) + 1) // 2
    raise ValueError(f"unknown rounding mode {rounding!r}")


def normalized_value(
    bab: PiScalar, baa: PiScalar, bbb: PiScalar, digits: int, rounding: str = TRUNCATE
) -> str:
    """Render ``bab / sqrt(baa * bbb)`` to ``digits`` places, exactly under ``rounding``."""
    if baa.is_zero() or bbb.is_zero():
        raise ZeroDivisionError("zero norm")
    if bab.is_zero():
        return "0"
    scale = 10 ** (2 * digits)
    pure = [_purity(x) for x in (bab, baa, bbb)]
    if all(pure) and 2 * pure[0][1] == pure[1][1] + pure[2][1]:
        # the sqrt(pi) powers cancel and the squared ratio is rational
        (cb, _), (ca, _), (cc, _) = pure
        n = _quantize_sqrt(cb * cb / (ca * cc) * scale, rounding)
        return format_fixed(n if cb > 0 else -n, digits)
    places = digits + 8
    for _ in range(64):
        vb, eb = bab.approx(places)
        va, ea = baa.approx(places)
        vc, ec = bbb.approx(places)
        if abs(vb) > eb and va > ea and vc > ec:
            sign = 1 if vb > 0 else -1
            num_lo, num_hi = (abs(vb) - eb) ** 2, (abs(vb) + eb) ** 2
            den_lo, den_hi = (va - ea) * (vc - ec), (va + ea) * (vc + ec)
            lo = _quantize_sqrt(num_lo / den_hi * scale, rounding)
            hi = _quantize_sqrt(num_hi / den_lo * scale, rounding)
            if lo == hi:
                return format_fixed(sign * lo, digits)
        places += 16
    raise ArithmeticError("normalized bracket did not converge")


def bracket_normalized(
    spec: MeasureSpec | int, a, b, digits: int, rounding: str = TRUNCATE
) -> str:
    """Unit-normalized bracket ``<a|b> / sqrt(<a|a><b|b>)`` as a decimal string."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    return normalized_value(
        bracket_raw(spec, a, b),
        bracket_raw(spec, a, a),
        bracket_raw(spec, b, b),
        digits,
        rounding,
    )


@dataclass
class GramReport:
    """Raw brackets among the admissible states of one oscillator.

    ``partition`` groups the admissible ``k`` into classes whose members are
    pairwise exactly orthogonal; it is ``None`` (NO_CONSISTENT_PATTERN) when
    the classes are not residue classes of one common step ``step``, and
    ``violation`` then names the first pair that breaks the pattern.
    """

    dim: MeasureSpec
    l: int
    labels: list[int]
    matrix: list[list[PiScalar]]
    partition: list[list[int]] | None = None
    step: int | None = None
    classes: list[list[int]] = field(default_factory=list)
    violation: tuple[int, int] | None = None

    def entry(self, k1: int, k2: int) -> PiScalar:
        return self.matrix[self.labels.index(k1)][self.labels.index(k2)]

    def nonzero_pairs(self) -> list[tuple[int, int]]:
        ks = self.labels
        return [
            (ks[i], ks[j])
            for i in range(len(ks))
            for j in range(i + 1, len(ks))
            if not self.matrix[i][j].is_zero()
        ]

    def witness(self) -> tuple[int, int] | None:
        """First admissible pair with a nonzero bracket, if any."""
        pairs = self.nonzero_pairs()
        return pairs[0] if pairs else None

    def to_json(self) -> dict:
        return {
            "dim": self.dim.n,
            "l": self.l,
            "ks": list(self.labels),
            "matrix": [[{"rat": _ratstr(x.rat), "pi": _ratstr(x.pi)} for x in row] for row in self.matrix],
            "partition": [list(c) for c in self.partition] if self.partition is not None else "none",
        }

    @classmethod
    def from_json(cls, data: dict) -> GramReport:
        matrix = [[PiScalar(Fraction(x["rat"]), Fraction(x["pi"])) for x in row] for row in data["matrix"]]
        part = data["partition"]
        partition = None if part == "none" else [list(c) for c in part]
        report = cls(MeasureSpec(data["dim"]), data["l"], list(data["ks"]), matrix, partition)
        if partition is not None:
            report.classes = [list(c) for c in partition]
            report.step, _ = _consistent(report.classes, report.labels)
        return report


def _ratstr(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _greedy_classes(labels: Sequence[int], zero) -> list[list[int]]:
    unassigned = list(labels)
    classes = []
    while unassigned:
        cls_ = [unassigned.pop(0)]
        for k in list(unassigned):
            if all(zero(k, m) for m in cls_):
                cls_.append(k)
                unassigned.remove(k)
        classes.append(cls_)
    return classes


def _consistent(classes: list[list[int]], labels: Sequence[int]):
    """``(step, None)`` for a staggered pattern, else ``(None, violating_pair)``."""
    for c in classes:
        for x, y in zip(c, c[1:]):
            # staggered bases never mix even and odd k
            if (y - x) % 2:
                return None, (x, y)
    if not any(len(c) > 1 for c in classes):
        return None, None
    steps = sorted({y - x for c in classes for x, y in zip(c, c[1:])})
    step = steps[0]
    where = {k: i for i, c in enumerate(classes) for k in c}
    for c in classes:
        for x, y in zip(c, c[1:]):
            if y - x != step:
                return None, (x, y)
        for k in labels:
            if k > c[0] and (k - c[0]) % step == 0 and where[k] != where[c[0]]:
                return None, (c[0], k)
    return step, None


def gram(spec: MeasureSpec | int, l: int, k_max: int) -> GramReport:
    """Gram matrix over the admissible ``k <= k_max`` and its orthogonal classes.

    Classes are seeded by the smallest unassigned ``k`` and extended by every
    later ``k`` orthogonal to all current members.  The partition is reported
    only if every multi-member class is an arithmetic progression with one
    shared even step (so no class mixes even and odd ``k``) and each class is
    the full residue class of the admissible labels modulo that step.
    """
    spec = _spec(spec)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    labels = [k for k in range(k_max + 1) if is_physical(spec.n, wavefunction(l, k))]
    matrix = [[PiScalar()] * len(labels) for _ in labels]
    for i, ki in enumerate(labels):
        for j in range(i, len(labels)):
            v = bracket_raw(spec, (l, ki), (l, labels[j]))
            matrix[i][j] = matrix[j][i] = v
    index = {k: i for i, k in enumerate(labels)}
    classes = _greedy_classes(labels, lambda p, q: matrix[index[p]][index[q]].is_zero())
    step, violation = _consistent(classes, labels)
    partition = classes if step is not None else NO_CONSISTENT_PATTERN
    return GramReport(spec, l, labels, matrix, partition, step, classes, violation)


def level_states(n_level: int) -> list[StateLabel]:
    """States ``|l,k>`` with odd ``k`` and ``l + k - 1 = n_level``, by increasing ``l``."""
    if n_level < 0:
        raise ValueError("level must be nonnegative")
    top = n_level + 1 if n_level % 2 == 0 else n_level
    return [StateLabel(n_level + 1 - k, k) for k in range(top, 0, -2)]


def degeneracy(n_level: int) -> int:
    """Level degeneracy counting the ``2l + 1`` angular states of each ``l``."""
    if n_level < 0:
        raise ValueError("level must be nonnegative")
    return (n_level + 1) * (n_level + 2) // 2


# Quadrature oracle: float evaluation of f and g, independent of the moments.
QUAD_CUTOFF = 12.0
QUAD_EPS = 1e-12
_BREAKS = (1.0, 2.0, 3.0, 4.5, 6.0, 8.0)


def quadrature_oracle(spec: MeasureSpec | int, f: LaurentSeries, g: LaurentSeries) -> float:
    """Adaptive Gauss-Kronrod value of the bracket of ``f`` and ``g``.

    Integrates over ``[eps, X]`` (and its reflection for the linear measure)
    with ``X = 12``: once the product is free of negative powers the integrand
    is a polynomial times ``exp(-x^2)``, and the tail past 12 is below
    ``exp(-144) * 12^d`` for degree ``d``, negligible for the degrees produced
    here.
    """
    spec = _spec(spec)
    low = (f * g).lowest_exponent()
    if low is not None and low + spec.volume_power < 0:
        raise NonIntegrable(low + spec.volume_power)
    p = spec.volume_power

    def h(x):
        return f(x) * g(x) * x**p * math.exp(-x * x)

    edges = (QUAD_EPS, *_BREAKS, QUAD_CUTOFF)
    pieces = [(lo, hi) for lo, hi in zip(edges, edges[1:])]
    if spec.linear:
        pieces += [(-hi, -lo) for lo, hi in pieces]
    total = 0.0
    with warnings.catch_warnings():
        # pieces that nearly cancel cannot reach a pure relative tolerance
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in pieces:
            total += integrate.quad(h, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)[0]
    return total if spec.linear else 2.0 * total


__all__ = [
    "GramReport",
    "LINEAR",
    "MeasureSpec",
    "NO_CONSISTENT_PATTERN",
    "NonIntegrable",
    "bracket_normalized",
    "bracket_raw",
    "degeneracy",
    "even_rule",
    "gram",
    "integrate_series",
    "is_physical",
    "level_states",
    "moment",
    "normalized_value",
    "physical_pattern",
    "quadrature_oracle",
    "radial",
    "scalar_product",
    "to_decimal",
]
