import json
import math
import random
from fractions import Fraction as F
from itertools import islice

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spiked.exactnum import HALF_AWAY, PiScalar, to_decimal
from spiked.laurent import ONE, LaurentSeries
from spiked.measure import (
    LINEAR,
    NO_CONSISTENT_PATTERN,
    GramReport,
    MeasureSpec,
    NonIntegrable,
    bracket_normalized,
    bracket_raw,
    degeneracy,
    even_rule,
    gram,
    integrate_series,
    is_physical,
    level_states,
    moment,
    physical_pattern,
    quadrature_oracle,
    radial,
    scalar_product,
)
from spiked.operators import StateLabel, b_dag, wavefunction
from spiked.verify import oracle_agrees, physical_pairs

L = LaurentSeries
SQRT_PI = PiScalar(0, 1)


def mp_moment(linear: bool, m: int):
    """Moment by direct quadrature in mpmath."""
    with mpmath.workdps(40):
        f = lambda x: x**m * mpmath.exp(-x * x)  # noqa: E731
        if linear:
            return mpmath.quad(f, [-mpmath.inf, 0, mpmath.inf])
        return 2 * mpmath.quad(f, [0, mpmath.inf])


def mp_value(x: PiScalar):
    with mpmath.workdps(60):
        return mpmath.mpf(x.rat.numerator) / x.rat.denominator + mpmath.mpf(
            x.pi.numerator
        ) / x.pi.denominator * mpmath.sqrt(mpmath.pi)


def _linear_integrable(l, k):
    f = wavefunction(l, k)
    g = b_dag(l + 1, f, canonical=False)
    return min(2 * f.lowest_exponent(), 2 * g.lowest_exponent()) >= 0


# cases where both norms exist on the full line
NORM_CASES = [(l, k) for l in range(4) for k in range(8) if _linear_integrable(l, k)]


def admissible(spec, l, k):
    return is_physical(spec.n, wavefunction(l, k))


class TestMeasureSpec:
    def test_fields(self):
        assert LINEAR.linear and LINEAR.volume_power == 0
        assert radial(3).volume_power == 2 and not radial(3).linear
        with pytest.raises(ValueError):
            radial(0)
        with pytest.raises(ValueError):
            MeasureSpec(-1)


class TestMoments:
    def test_examples(self):
        assert moment(LINEAR, 1) == 0
        assert moment(radial(1), 1) == 1
        assert moment(LINEAR, 4) == SQRT_PI * F(3, 4)
        assert moment(LINEAR, 0) == moment(radial(4), 0) == SQRT_PI

    @pytest.mark.parametrize("linear", [True, False])
    @pytest.mark.parametrize("m", range(21))
    def test_against_gamma(self, linear, m):
        got = moment(LINEAR if linear else radial(1), m)
        if linear and m % 2:
            want = PiScalar()
        elif m % 2:
            want = PiScalar(math.factorial((m - 1) // 2), 0)
        else:
            # Gamma(m/2 + 1/2) = (m-1)!! / 2^(m/2) * sqrt(pi)
            want = SQRT_PI * F(math.prod(range(m - 1, 0, -2)), 2 ** (m // 2))
        assert got == want
        with mpmath.workdps(40):
            gamma = mpmath.gamma(mpmath.mpf(m + 1) / 2)
            assert abs(mp_value(got) - (0 if linear and m % 2 else gamma)) < mpmath.mpf(10) ** -30

    @pytest.mark.parametrize("m", [0, 1, 2, 5, 8])
    def test_against_quadrature(self, m):
        for linear in (True, False):
            got = moment(LINEAR if linear else radial(2), m)
            assert abs(mp_value(got) - mp_moment(linear, m)) < 1e-25

    def test_negative_power_is_rejected(self):
        with pytest.raises(NonIntegrable) as info:
            moment(LINEAR, -2)
        assert info.value.exponent == -2


class TestPhysicality:
    def test_examples(self):
        assert not is_physical(3, wavefunction(2, 0))
        assert is_physical(3, wavefunction(2, 1))
        assert all(is_physical(1, wavefunction(0, k)) for k in range(12))

    @pytest.mark.parametrize(
        "n, l, want",
        [
            (3, 2, [False, True] * 3),
            (3, 0, [True] * 6),
            (1, 1, [False, True] * 3),
        ],
    )
    def test_pattern(self, n, l, want):
        assert list(islice(physical_pattern(n, l), 6)) == want

    def test_zero_series(self):
        with pytest.raises(ValueError):
            is_physical(1, L())

    def test_even_rule_examples(self):
        assert even_rule(3, 1)
        assert not even_rule(3, 2)
        assert even_rule(1, 0)
        with pytest.raises(ValueError):
            even_rule(0, 0)

    @pytest.mark.parametrize("n", range(1, 8))
    @pytest.mark.parametrize("l", range(0, 6))
    def test_even_rule_matches_structure(self, n, l):
        # odd k always admissible; even k exactly when the rule holds
        assert all(admissible(MeasureSpec(n), l, k) for k in range(1, 8, 2))
        assert all(admissible(MeasureSpec(n), l, k) == even_rule(n, l) for k in range(0, 8, 2))


class TestBrackets:
    def test_examples(self):
        assert to_decimal(bracket_raw(LINEAR, (7, 1), (7, 1)), 8) == "14034.40729348"
        assert bracket_raw(LINEAR, (7, 1), (7, 5)).is_zero()
        assert bracket_raw(LINEAR, (0, 0), (0, 1)).is_zero()
        assert bracket_raw(LINEAR, (0, 0), (0, 0)) == SQRT_PI

    def test_seven_one_against_mpmath(self):
        # exact value from mpmath quadrature of the integrand itself
        terms = (wavefunction(7, 1) ** 2).terms()
        with mpmath.workdps(40):
            g = lambda x: sum(c * x**n for n, c in terms.items()) * mpmath.exp(-x * x)  # noqa: E731
            want = 2 * mpmath.quad(g, [0, 1, 3, mpmath.inf])
            assert abs(mp_value(bracket_raw(LINEAR, (7, 1), (7, 1))) - want) < 1e-20

    def test_non_integrable(self):
        with pytest.raises(NonIntegrable) as info:
            bracket_raw(radial(3), (2, 0), (2, 0))
        assert info.value.exponent == -2
        with pytest.raises(NonIntegrable):
            integrate_series(LINEAR, L((), (1,)))

    @settings(max_examples=40)
    @given(
        n=st.integers(0, 5),
        s1=st.tuples(st.integers(0, 4), st.integers(0, 7)),
        s2=st.tuples(st.integers(0, 4), st.integers(0, 7)),
    )
    def test_symmetry(self, n, s1, s2):
        try:
            v = bracket_raw(n, s1, s2)
        except NonIntegrable:
            with pytest.raises(NonIntegrable):
                bracket_raw(n, s2, s1)
            return
        assert v == bracket_raw(n, s2, s1)

    @pytest.mark.parametrize("n", range(0, 6))
    def test_positive_diagonal(self, n):
        for l in range(5):
            for k in range(8):
                if admissible(MeasureSpec(n), l, k):
                    text = to_decimal(bracket_raw(n, (l, k), (l, k)), 20)
                    assert not text.startswith("-") and text != "0"

    @pytest.mark.parametrize("i", range(10))
    def test_hermite_orthogonality(self, i):
        for j in range(10):
            if i != j:
                assert bracket_raw(LINEAR, (0, i), (0, j)).is_zero()

    @pytest.mark.parametrize("l, k", NORM_CASES)
    def test_norm_recurrence(self, l, k):
        f = wavefunction(l, k)
        g = b_dag(l + 1, f, canonical=False)
        assert scalar_product(LINEAR, g, g) == scalar_product(LINEAR, f, f) * (2 * k + 4 * l + 4)

    def test_norm_recurrence_needs_the_linear_measure(self):
        # with the x^2 volume element b^dag is no longer the adjoint of b
        f = wavefunction(0, 0)
        g = b_dag(1, f, canonical=False)
        assert scalar_product(3, g, g) != scalar_product(3, f, f) * 4


class TestNormalized:
    def test_examples(self):
        assert bracket_normalized(1, (0, 0), (0, 1), 6) == "0.797884"
        assert bracket_normalized(LINEAR, (7, 1), (7, 5), 6) == "0"
        assert bracket_normalized(LINEAR, (0, 0), (0, 1), 6) == "0"

    @pytest.mark.parametrize("n, s", [(0, (1, 3)), (1, (0, 4)), (3, (2, 1)), (4, (1, 3))])
    def test_self_similarity(self, n, s):
        assert bracket_normalized(n, s, s, 6) == "1.000000"

    def test_sqrt_two_over_pi(self):
        with mpmath.workdps(30):
            want = mpmath.floor(mpmath.sqrt(2 / mpmath.pi) * 10**12)
        assert bracket_normalized(1, (0, 0), (0, 1), 12) == f"0.{int(want):012d}"
        assert bracket_normalized(1, (0, 0), (0, 1), 6, HALF_AWAY) == "0.797885"

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_against_mpmath(self, seed):
        spec, s1, s2 = physical_pairs(random.Random(seed), 1)[0]
        with mpmath.workdps(60):
            ab, aa, bb = (mp_value(bracket_raw(spec, x, y)) for x, y in ((s1, s2), (s1, s1), (s2, s2)))
            want = ab / mpmath.sqrt(aa * bb)
        got = bracket_normalized(spec, s1, s2, 10)
        assert abs(mpmath.mpf(got) - want) < mpmath.mpf(10) ** -10


class TestGram:
    def test_three_dimensions(self):
        report = gram(3, 0, 9)
        assert {tuple(c) for c in report.partition} == {(0, 4, 8), (2, 6), (1, 5, 9), (3, 7)}
        assert report.step == 4

    def test_one_dimension(self):
        report = gram(1, 0, 5)
        assert report.partition == [[0, 2, 4], [1, 3, 5]]
        assert report.step == 2

    def test_two_dimensions_have_no_pattern(self):
        report = gram(2, 0, 5)
        assert report.partition is NO_CONSISTENT_PATTERN
        assert report.violation == (0, 3)
        # orthogonality is not transitive here: 0 and 6 both meet 3 at zero but not each other
        wide = gram(2, 0, 7)
        assert wide.entry(0, 3).is_zero() and wide.entry(3, 6).is_zero()
        assert not wide.entry(0, 6).is_zero()
        assert wide.partition is NO_CONSISTENT_PATTERN

    def test_inadmissible_labels_are_excluded(self):
        report = gram(3, 2, 7)
        assert report.labels == [1, 3, 5, 7]

    @pytest.mark.parametrize("n", [1, 3, 5])
    @pytest.mark.parametrize("l", range(0, 6))
    def test_staggering(self, n, l):
        report = gram(n, l, 11)
        if len(report.labels) < 3:
            pytest.skip("too few admissible states")
        assert report.step == n + 1
        for cls in report.partition:
            assert all(b - a == n + 1 for a, b in zip(cls, cls[1:]))

    @pytest.mark.parametrize("n, l", [(0, 0), (1, 1), (3, 0), (2, 0), (4, 1)])
    def test_report_invariants(self, n, l):
        report = gram(n, l, 8)
        m = report.matrix
        for i in range(len(m)):
            assert float(m[i][i]) > 0
            for j in range(len(m)):
                assert m[i][j] == m[j][i]
        for cls in report.partition or []:
            for x in cls:
                for y in cls:
                    if x != y:
                        assert report.entry(x, y).is_zero()

    def test_json(self):
        report = gram(3, 0, 5)
        data = report.to_json()
        assert set(data) == {"dim", "l", "ks", "matrix", "partition"}
        assert data["matrix"][0][0] == {"rat": "0/1", "pi": "1/2"}
        again = GramReport.from_json(json.loads(json.dumps(data)))
        assert again.matrix == report.matrix and again.partition == report.partition
        assert gram(2, 0, 5).to_json()["partition"] == "none"
        with pytest.raises(ValueError):
            gram(3, 0, 0)


class TestLevels:
    def test_examples(self):
        assert level_states(2) == [StateLabel(0, 3), StateLabel(2, 1)]
        assert level_states(4) == [StateLabel(0, 5), StateLabel(2, 3), StateLabel(4, 1)]
        assert degeneracy(0) == 1

    @pytest.mark.parametrize("n", range(0, 12))
    def test_degeneracy(self, n):
        states = level_states(n)
        assert all(s.k % 2 == 1 and s.l + s.k - 1 == n for s in states)
        assert sum(2 * s.l + 1 for s in states) == degeneracy(n) == (n + 1) * (n + 2) // 2


class TestQuadratureOracle:
    def test_gaussian(self):
        assert quadrature_oracle(LINEAR, ONE, ONE) == pytest.approx(float(mpmath.sqrt(mpmath.pi)), rel=1e-9)

    def test_seven_one(self):
        f = wavefunction(7, 1)
        assert quadrature_oracle(LINEAR, f, f) == pytest.approx(14034.40729347, rel=1e-6)

    def test_orthogonal_pair(self):
        f, g = wavefunction(2, 1), wavefunction(2, 5)
        norms = (quadrature_oracle(3, f, f) * quadrature_oracle(3, g, g)) ** 0.5
        assert abs(quadrature_oracle(3, f, g)) <= 1e-6 * norms

    def test_rejects_non_integrable(self):
        with pytest.raises(NonIntegrable):
            quadrature_oracle(3, wavefunction(2, 0), wavefunction(2, 0))

    @pytest.mark.parametrize("case", physical_pairs(random.Random(7), 20), ids=str)
    def test_agrees_with_exact(self, case):
        ok, exact, approx = oracle_agrees(*case)
        assert ok, (exact, approx)
