"""Intertwining and ladder operators for H_l = -d^2/dx^2 + x^2 + l(l+1)/x^2.

Every eigenfunction has the form ``phi(x) = f(x) * exp(-x**2 / 2)`` with ``f`` a
Laurent series, and all operators here act on the stripped factor ``f``.
Conjugating by the Gaussian turns ``d/dx`` into ``d/dx - x``, which gives

    b_l      phi  ->   f' + (l/x) f
    b_l^dag  phi  ->  -f' + (2x + l/x) f
    H_l      phi  ->  -f'' + 2x f' + f + l(l+1)/x^2 f

(the last one from ``phi'' = (f'' - 2x f' - f + x^2 f) e^{-x^2/2}``; the
``x^2`` terms cancel against the potential).

Every operator takes ``canonical``.  With ``canonical=True`` (the default)
each elementary step is followed by gcd normalization, which keeps integer
coefficients small and gives a unique representative up to sign, but makes
the operators nonlinear.  With ``canonical=False`` the operators are the
exact linear maps above, for which the factorization and commutator
identities hold term by term.

Cost: ``a_dag(l, .)`` and ``a(l, .)`` expand into ``2l + 1`` elementary
steps, so ``ladder_dag(l, k, .)`` costs ``O(l k)`` series operations.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import count
from typing import Iterator

from .laurent import ONE, X, LaurentSeries


@dataclass(frozen=True, order=True)
class StateLabel:
    """The ket ``|l, k>``: oscillator index ``l``, excitation index ``k``."""

    l: int
    k: int

    def __post_init__(self):
        if self.l < 0 or self.k < 0:
            raise ValueError(f"state indices must be nonnegative, got ({self.l}, {self.k})")

    def __iter__(self):
        return iter((self.l, self.k))

    def __str__(self) -> str:
        return f"({self.l},{self.k})"

    @classmethod
    def parse(cls, text: str) -> StateLabel:
        """Parse ``"l,k"``."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'l,k', got {text!r}")
        return cls(int(parts[0]), int(parts[1]))


def _finish(f: LaurentSeries, canonical: bool) -> LaurentSeries:
    return f.gcd_normalize() if canonical else f


def _inverse_x(l: int) -> LaurentSeries:
    return LaurentSeries((), (l,))


def b_dag(l: int, f: LaurentSeries, canonical: bool = True) -> LaurentSeries:
    """NE move: ``-f' + (2x + l/x) f``."""
    p = LaurentSeries((0, 2), (l,))
    return _finish(p * f - f.diff(), canonical)


def b(l: int, f: LaurentSeries, canonical: bool = True) -> LaurentSeries:
    """SW move: ``f' + (l/x) f``."""
    return _finish(_inverse_x(l) * f + f.diff(), canonical)


def a_dag(l: int, f: LaurentSeries, canonical: bool = True) -> LaurentSeries:
    """Raising operator of H_l, built as ``b_l^dag a_{l-1}^dag b_l``."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    if l == 0:
        return b_dag(0, f, canonical)
    return b_dag(l, a_dag(l - 1, b(l, f, canonical), canonical), canonical)


def a(l: int, f: LaurentSeries, canonical: bool = True) -> LaurentSeries:
    """Lowering operator of H_l, built as ``b_l^dag a_{l-1} b_l``."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    if l == 0:
        return b(0, f, canonical)
    return b_dag(l, a(l - 1, b(l, f, canonical), canonical), canonical)


def twine_dag(l: int, f: LaurentSeries, canonical: bool = True) -> LaurentSeries:
    """``b_l^dag ... b_2^dag b_1^dag f``; identity for ``l = 0``."""
    for j in range(1, l + 1):
        f = b_dag(j, f, canonical)
    return f


def ladder_dag(l: int, k: int, f: LaurentSeries, canonical: bool = True) -> LaurentSeries:
    """``k``-fold application of ``a_dag(l, .)``."""
    for _ in range(k):
        f = a_dag(l, f, canonical)
    return f


@lru_cache(maxsize=None)
def _hermite_factor(k: int) -> LaurentSeries:
    if k == 0:
        return ONE
    return a_dag(0, _hermite_factor(k - 1))


@lru_cache(maxsize=None)
def wavefunction(l: int, k: int) -> LaurentSeries:
    """Canonical ``f_{l,k}``: raise the ground state of H_0 ``k`` times, then
    climb to oscillator ``l`` with the intertwiners."""
    if l < 0 or k < 0:
        raise ValueError("l and k must be nonnegative")
    return twine_dag(l, _hermite_factor(k))


def wavefunctions(l: int) -> Iterator[LaurentSeries]:
    """Lazy stream ``f_{l,0}, f_{l,1}, ...``."""
    return (wavefunction(l, k) for k in count())


def ladder_route(l: int) -> Iterator[LaurentSeries]:
    """The alternative stream: iterate ``a_dag(l, .)`` from ``twine_dag(l, 1)``."""
    f = twine_dag(l, ONE)
    while True:
        yield f
        f = a_dag(l, f)


def hamiltonian_apply(l: int, f: LaurentSeries) -> LaurentSeries:
    """Stripped Hamiltonian ``-f'' + 2x f' + f + l(l+1) f / x^2`` (linear)."""
    d1 = f.diff()
    return -d1.diff() + 2 * X * d1 + f + f.shift(-2) * (l * (l + 1))


def energy(l: int, k: int) -> int:
    """Eigenvalue of ``|l,k>`` in units of hbar*omega/2: ``2(l + k) + 1``."""
    if l < 0 or k < 0:
        raise ValueError("l and k must be nonnegative")
    return 2 * (l + k) + 1


def spectrum(l: int, count_: int) -> list[int]:
    return [energy(l, k) for k in range(count_)]
