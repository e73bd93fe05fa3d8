"""Moment layer: Bell recursion goldens, the d / Q / A integer sequences,
the integrality table, and the three cross-checked moment routes."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetakit.exactalg import ConsistencyError, UniPoly, binomial
from thetakit.cumulants import cumulant_lambert, cumulant_poly, cumulant_value
from thetakit.moments import (
    bell_moments,
    conjecture_check,
    d_sequence,
    dk_sequence,
    kappa_recurrence_check,
    moments_determinant,
    moments_from_cumulants,
    moments_partition,
    a_sequence,
    q_from_a,
    q_sequence,
    q_value,
)
from thetakit.numkernel import make_context

D_GOLDEN = [1, -1, 51, 849, -26199, 1341999, 82018251]

# scaled integrality table, rows p = 3..7, terms m = 1..6
CONJECTURE_GOLDEN = {
    3: [1, 3, 7, 2953, 291969, 12470011],
    4: [1, 29, 43, 116171, 78138169, 40042714493],
    5: [1, 17, 105, 4521, 1802457, 535169097],
    6: [1, 123, 8059, 724877, 1686624921, 3594330803003],
    7: [1, 97, 5959, 293923, 294067681, 490927058857],
}


class TestBellMoments:
    def test_golden_displays(self):
        polys = bell_moments(6)
        assert str(polys[0].R) == "1"
        assert str(polys[1].R) == "0"
        assert str(polys[2].R) == "-2*m^2 + 2*m"
        assert str(polys[3].R) == "16*m^3 - 24*m^2 + 8*m"
        assert str(polys[4].R) == "-132*m^4 + 264*m^3 - 164*m^2 + 32*m"
        assert str(polys[5].R) == "1216*m^5 - 3040*m^4 + 2688*m^3 - 992*m^2 + 128*m"
        assert (
            str(polys[6].R)
            == "-12440*m^6 + 37320*m^5 - 42376*m^4 + 22552*m^3 - 5568*m^2 + 512*m"
        )

    @pytest.mark.parametrize("n", range(2, 11))
    def test_symmetry_under_modulus_swap(self, n):
        # R_{2n}(1-m) = (-1)^n R_{2n}(m)
        r = bell_moments(n)[n].R
        assert r.compose_affine(Fraction(-1), Fraction(1)) == r * ((-1) ** n)

    @pytest.mark.parametrize("n", range(2, 11))
    def test_integral_and_divisible(self, n):
        r = bell_moments(n)[n].R
        assert r.is_integral()
        assert r.divisible_by_m_one_minus_m()


class TestDSequence:
    def test_golden(self):
        assert d_sequence(7) == D_GOLDEN

    def test_all_odd(self):
        assert all(d % 2 == 1 for d in d_sequence(7))

    def test_p2_scaling_matches(self):
        vals = dk_sequence(2, 5)
        assert vals[0] == 1
        for n, d in enumerate(d_sequence(5), start=1):
            assert vals[n] == Fraction(d, 2 ** n)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            d_sequence(0)


class TestConjectureTable:
    @pytest.mark.parametrize("p", sorted(CONJECTURE_GOLDEN))
    def test_scaled_golden_and_integral(self, p):
        rows = conjecture_check(p, 6)
        assert [r.scaled for r in rows] == CONJECTURE_GOLDEN[p]
        assert all(r.is_integer for r in rows)

    def test_p2_reduces_to_d(self):
        rows = conjecture_check(2, 4)
        assert [r.scaled for r in rows] == d_sequence(4)

    def test_unknown_p_reports_denominators(self):
        rows = conjecture_check(11, 4)
        for r in rows:
            assert r.alpha is None and r.scaled is None and r.is_integer is None
            assert isinstance(r.denominator_factors, dict)
            assert all(isinstance(prime, int) for prime in r.denominator_factors)
        # the raw values themselves are nontrivial rationals
        assert rows[1].value.denominator > 1

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            conjecture_check(1, 3)


class TestQSequence:
    def test_golden_with_zero_gaps(self):
        assert q_sequence(5)[:5] == [2, 0, -144, 0, 96768]
        assert q_sequence(5)[1::2] == [0] * 4

    def test_q_value_anchors(self):
        assert q_value(2) == 2
        assert q_value(3) == 0
        assert q_value(4) == -144
        assert q_value(6) == 96768

    def test_a_sequence_golden(self):
        assert a_sequence(5) == [1, 6, 336, 77616, 50916096, 76307083776]

    def test_two_routes_agree_to_n8(self):
        # grading route vs the A-recurrence route for Q_{4n}, n <= 8
        via_a = q_from_a(8)
        assert via_a == [q_value(2 * n) for n in range(1, 9)]
        assert via_a[:3] == [2, -144, 96768]

    def test_recurrence_check(self):
        assert kappa_recurrence_check(8)


def _reference_moments(kappas: list) -> list:
    # plain textbook recurrence, independent of the module internals
    mu = [Fraction(1)]
    for order in range(1, len(kappas) + 1):
        acc = kappas[order - 1]
        for m in range(1, order):
            acc += kappas[m - 1] * mu[order - m] * binomial(order - 1, m - 1)
        mu.append(acc)
    return mu


class TestMomentRoutes:
    def test_exact_recurrence_matches_bell(self):
        mu = moments_from_cumulants(6)
        bell = bell_moments(6)
        for n in range(7):
            assert mu[2 * n] == bell[n].R
        for j in range(1, 13, 2):
            assert mu[j] == UniPoly.zero()

    def test_determinant_and_partition_match_graded(self):
        orders = 12
        kappas = [
            UniPoly.zero() if (o % 2 or o == 2) else cumulant_poly(o // 2).coefficient
            for o in range(1, orders + 1)
        ]
        mu = moments_from_cumulants(orders // 2)
        for n in range(1, orders + 1):
            assert moments_determinant(n, kappas) == mu[n]
            assert moments_partition(n, kappas) == mu[n]

    @settings(max_examples=25, deadline=None)
    @given(
        st.lists(
            st.fractions(min_value=-5, max_value=5, max_denominator=6),
            min_size=1,
            max_size=7,
        )
    )
    def test_routes_agree_on_arbitrary_cumulants(self, kappas):
        # includes kappa_1 != 0 and odd cumulants, unlike the graded ring
        ref = _reference_moments(kappas)
        n = len(kappas)
        assert moments_determinant(n, kappas) == ref[n]
        assert moments_partition(n, kappas) == ref[n]

    def test_numeric_context_route(self):
        ctx = make_context("0.6", 40)
        mu = moments_from_cumulants(2, ctx)
        assert float(abs(mu[2] - ctx.sigma2)) < 1e-35
        expected4 = cumulant_value(4, ctx) + ctx.sigma2 ** 2 * 3
        assert float(abs(mu[4] - expected4)) < 1e-33

    def test_partition_budget(self):
        # sparse cumulants keep the over-cap run prunable: only pair blocks
        sparse = [Fraction(1) if o == 2 else Fraction(0) for o in range(1, 15)]
        with pytest.raises(ValueError):
            moments_partition(13, sparse)
        assert moments_partition(14, sparse, cap=14) == _reference_moments(sparse)[14]
        with pytest.raises(ValueError):
            moments_partition(15, [Fraction(1)] * 15, cap=14)

    def test_determinant_needs_enough_cumulants(self):
        with pytest.raises(ValueError):
            moments_determinant(4, [Fraction(1), Fraction(2)])
