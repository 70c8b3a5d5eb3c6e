"""Computational checks of the operator algebra and the basis findings.

Each suite runs a batch of exact (or, for ``oracle``, floating-point) cases
and reports how many passed together with the first failure.
"""
from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .laurent import ONE, LaurentSeries
from .measure import (
    LINEAR,
    MeasureSpec,
    bracket_raw,
    degeneracy,
    gram,
    is_physical,
    level_states,
    moment,
    quadrature_oracle,
    scalar_product,
)
from .exactnum import PiScalar
from .operators import (
    a,
    a_dag,
    b,
    b_dag,
    energy,
    hamiltonian_apply,
    ladder_route,
    wavefunction,
)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.cases - len(self.failures)}/{self.cases} cases"
        if self.failures:
            line += f"; first failure: {self.failures[0]}"
        return line


def random_series(rng: random.Random, lo: int = -4, hi: int = 6, coeff: int = 9) -> LaurentSeries:
    """Random nonzero series with exponents in ``[lo, hi]``."""
    while True:
        width = rng.randint(1, hi - lo + 1)
        exps = rng.sample(range(lo, hi + 1), width)
        f = LaurentSeries.from_terms({n: rng.randint(-coeff, coeff) for n in exps})
        if f:
            return f


def _ham(l: int, f: LaurentSeries) -> LaurentSeries:
    # H_{-1} coincides with H_0
    return hamiltonian_apply(max(l, 0), f)


def identity_cases(l: int, f: LaurentSeries) -> list[tuple[str, LaurentSeries, LaurentSeries]]:
    """Factorization, intertwining and ladder commutator identities (raw operators)."""
    raw = dict(canonical=False)
    bd = lambda g: b_dag(l, g, **raw)  # noqa: E731
    bb = lambda g: b(l, g, **raw)  # noqa: E731
    ad = lambda g: a_dag(l, g, **raw)  # noqa: E731
    aa = lambda g: a(l, g, **raw)  # noqa: E731
    return [
        ("b^dag b = H_l + 2l - 1", bd(bb(f)), _ham(l, f) + f * (2 * l - 1)),
        ("b b^dag = H_{l-1} + 2l + 1", bb(bd(f)), _ham(l - 1, f) + f * (2 * l + 1)),
        ("H_l b^dag - b^dag H_{l-1} = 2 b^dag", _ham(l, bd(f)) - bd(_ham(l - 1, f)), bd(f) * 2),
        ("H_{l-1} b - b H_l = -2 b", _ham(l - 1, bb(f)) - bb(_ham(l, f)), bb(f) * -2),
        ("[H_l, a^dag] = 2 a^dag", _ham(l, ad(f)) - ad(_ham(l, f)), ad(f) * 2),
        ("[H_l, a] = -2 a", _ham(l, aa(f)) - aa(_ham(l, f)), aa(f) * -2),
    ]


def suite_commutator(samples: int = 50, ls: Iterable[int] = range(1, 6), seed: int = 20) -> SuiteResult:
    res = SuiteResult("commutator")
    rng = random.Random(seed)
    series = [random_series(rng) for _ in range(samples)]
    for l in ls:
        for f in series:
            for name, lhs, rhs in identity_cases(l, f):
                res.check(lhs == rhs, f"{name} fails for l={l}, f={f!r}")
    # the l = 0 pair is the ordinary oscillator: [a_0, a_0^dag] = 2
    for f in series:
        lhs = a(0, a_dag(0, f, False), False) - a_dag(0, a(0, f, False), False)
        res.check(lhs == f * 2, f"[a_0, a_0^dag] != 2 on {f!r}")
    return res


def suite_eigen(l_max: int = 6, k_max: int = 8) -> SuiteResult:
    res = SuiteResult("eigen")
    for l in range(l_max + 1):
        for k in range(k_max + 1):
            f = wavefunction(l, k)
            res.check(
                hamiltonian_apply(l, f) == f * energy(l, k),
                f"H_{l} f_({l},{k}) != {energy(l, k)} f",
            )
    return res


def suite_annihilation(l_max: int = 8) -> SuiteResult:
    res = SuiteResult("annihilation")
    for l in range(l_max + 1):
        out = a(l, wavefunction(l, 0))
        res.check(out.is_zero(), f"a_{l} f_({l},0) = {out!r}")
    # lowering walks the l = 0 list back down
    f = wavefunction(0, 5)
    for k in range(4, -1, -1):
        f = a(0, f)
        res.check(f == wavefunction(0, k), f"a_0 chain at k={k} gave {f!r}")
    return res


def suite_routes(ls: Iterable[int] = (1, 2), count: int = 6) -> SuiteResult:
    res = SuiteResult("routes")
    for l in ls:
        route = ladder_route(l)
        for k in range(count):
            g = next(route)
            f = wavefunction(l, k)
            if g == f:
                res.check(True, "")
            elif g == -f:
                res.check(False, f"sign mismatch at ({l},{k}): {f!r} vs {g!r}")
            else:
                res.check(False, f"routes differ at ({l},{k}): {f!r} vs {g!r}")
    return res


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gamma_moment(linear: bool, m: int) -> PiScalar:
    """``Gamma((m+1)/2)`` (radial) or its even-``m`` restriction (linear)."""
    if m % 2:
        if linear:
            return PiScalar()
        j = (m - 1) // 2
        fact = 1
        for i in range(2, j + 1):
            fact *= i
        return PiScalar(fact, 0)
    return PiScalar(0, 1) * Fraction(_double_factorial(m - 1), 2 ** (m // 2))


def suite_moments(m_max: int = 20) -> SuiteResult:
    res = SuiteResult("moments")
    for spec in (LINEAR, MeasureSpec(1)):
        for m in range(m_max + 1):
            got, want = moment(spec, m), gamma_moment(spec.linear, m)
            res.check(got == want, f"{spec} P_{m} = {got}, expected {want}")
    # norm recurrence of the NE move on the linear line
    for k in (1, 3, 5, 7):
        f = wavefunction(0, k)
        g = b_dag(1, f, canonical=False)
        lhs, rhs = scalar_product(LINEAR, g, g), scalar_product(LINEAR, f, f) * (2 * k + 4)
        res.check(lhs == rhs, f"<b^dag f, b^dag f> != (2k+4)<f,f> at k={k}")
    return res


def suite_orthogonality(k_max: int = 9) -> SuiteResult:
    res = SuiteResult("orthogonality")
    for i in range(k_max + 1):
        for j in range(i + 1, k_max + 1):
            v = bracket_raw(LINEAR, (0, i), (0, j))
            res.check(v.is_zero(), f"<0,{i}|0,{j}> = {v}")
    for l in (1, 2, 3):
        for i in range(1, k_max + 1, 2):
            for j in range(i + 2, k_max + 1, 2):
                v = bracket_raw(LINEAR, (l, i), (l, j))
                res.check(v.is_zero(), f"linear <{l},{i}|{l},{j}> = {v}")
    return res


def suite_staggering(k_max: int = 11) -> SuiteResult:
    res = SuiteResult("staggering")
    for n in (1, 3, 5):
        for l in range(0, 6):
            report = gram(n, l, k_max)
            if len(report.labels) < 3:
                continue
            res.check(
                report.step == n + 1,
                f"N={n}, l={l}: step {report.step}, classes {report.classes}",
            )
    report = gram(2, 0, 5)
    res.check(
        report.partition is None and bool(report.nonzero_pairs()),
        f"N=2 reported a pattern: {report.partition}",
    )
    for level in range(0, 9):
        states = level_states(level)
        res.check(
            sum(2 * s.l + 1 for s in states) == degeneracy(level),
            f"degeneracy mismatch at level {level}",
        )
    return res


def physical_pairs(rng: random.Random, count: int, l_max: int = 4, k_max: int = 7):
    """Random ``(spec, (l,k), (l',k'))`` with both states physical under ``spec``."""
    out = []
    while len(out) < count:
        spec = MeasureSpec(rng.randint(0, 5))
        s1 = (rng.randint(0, l_max), rng.randint(0, k_max))
        s2 = (rng.randint(0, l_max), rng.randint(0, k_max))
        if is_physical(spec.n, wavefunction(*s1)) and is_physical(spec.n, wavefunction(*s2)):
            out.append((spec, s1, s2))
    return out


def oracle_agrees(spec: MeasureSpec, s1, s2, rel: float = 1e-6) -> tuple[bool, float, float]:
    exact = float(bracket_raw(spec, s1, s2))
    approx = quadrature_oracle(spec, wavefunction(*s1), wavefunction(*s2))
    if exact == 0.0:
        # relative error is undefined at an exact zero; use the Cauchy-Schwarz scale
        scale = (float(bracket_raw(spec, s1, s1)) * float(bracket_raw(spec, s2, s2))) ** 0.5
        return abs(approx) <= rel * scale, exact, approx
    return abs(approx - exact) <= rel * abs(exact), exact, approx


def suite_oracle(count: int = 20, seed: int = 11) -> SuiteResult:
    res = SuiteResult("oracle")
    for spec, s1, s2 in physical_pairs(random.Random(seed), count):
        ok, exact, approx = oracle_agrees(spec, s1, s2)
        res.check(ok, f"{spec} {s1} {s2}: exact {exact!r}, quadrature {approx!r}")
    return res


def suite_hermite(k_max: int = 9) -> SuiteResult:
    res = SuiteResult("hermite")
    prev, cur = LaurentSeries(), ONE
    for k in range(k_max + 1):
        res.check(wavefunction(0, k) == cur.gcd_normalize(), f"f_(0,{k}) is not H_{k}")
        prev, cur = cur, LaurentSeries((0, 2)) * cur - prev * (2 * k)
    return res


SUITES: dict[str, Callable[[], SuiteResult]] = {
    "eigen": suite_eigen,
    "commutator": suite_commutator,
    "annihilation": suite_annihilation,
    "routes": suite_routes,
    "moments": suite_moments,
    "orthogonality": suite_orthogonality,
    "staggering": suite_staggering,
    "oracle": suite_oracle,
    "hermite": suite_hermite,
}


def run(names: Iterable[str]) -> list[SuiteResult]:
    return [SUITES[name]() for name in names]
