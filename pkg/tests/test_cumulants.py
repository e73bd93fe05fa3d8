"""Cumulant layer: exact graded polynomials against three numeric routes
(hyperbolic-sine series, lattice sum, direct grade evaluation)."""

import pytest

from thetakit.cumulants import (
    CumulantPoly,
    cumulant_eisenstein,
    cumulant_lambert,
    cumulant_poly,
    cumulant_symmetry_residual,
    cumulant_value,
    p_poly,
    symmetry_check_P,
)
from thetakit.exactalg import UniPoly
from thetakit.numkernel import DomainError, hpf, lemniscatic_context, make_context

KAPPA4_LEMN = "0.060656787177862888435934250149952886976349774397008478988"


class TestPPoly:
    def test_golden_displays(self):
        assert str(p_poly(1)) == "2*m^2 - 2*m"
        assert str(p_poly(2)) == "16*m^3 - 24*m^2 + 8*m"
        assert str(p_poly(3)) == "272*m^4 - 544*m^3 + 304*m^2 - 32*m"

    def test_p0_is_zero(self):
        assert p_poly(0) == UniPoly.zero()

    @pytest.mark.parametrize("n", range(1, 13))
    def test_integral_and_divisible(self, n):
        p = p_poly(n)
        assert p.is_integral()
        assert p.divisible_by_m_one_minus_m()
        assert p.degree == n + 1

    @pytest.mark.parametrize("n", range(1, 13))
    def test_self_duality(self, n):
        # P_{2n}(1-m) = (-1)^(n-1) P_{2n}(m)
        assert symmetry_check_P(n)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            p_poly(-1)


class TestCumulantPoly:
    def test_kappa4_form(self):
        c = cumulant_poly(2)
        # kappa_4 = 2 (kk')^2 (z/2)^4, so the grade coefficient is 2m(1-m)
        assert str(c.coefficient) == "-2*m^2 + 2*m"
        assert c.sign == -1

    def test_sign_alternation(self):
        assert [cumulant_poly(n).sign for n in range(2, 7)] == [-1, 1, -1, 1, -1]

    def test_rejects_low_order(self):
        with pytest.raises(DomainError):
            cumulant_poly(1)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_evaluate_matches_series_route(self, n):
        ctx = make_context("0.6", 40)
        exact = cumulant_poly(n).evaluate(ctx)
        series = cumulant_lambert(n, ctx)
        rel = abs(exact - series) / abs(series)
        assert float(rel) < 1e-32

    def test_evaluate_lemniscatic_kappa4(self):
        ctx = lemniscatic_context(50)
        got = cumulant_poly(2).evaluate(ctx)
        assert float(abs(got - hpf(KAPPA4_LEMN, 50))) < 1e-45


class TestSeriesRoute:
    def test_kappa2_is_the_variance(self):
        for ctx in (make_context("0.3", 40), lemniscatic_context(40)):
            assert float(abs(cumulant_lambert(1, ctx) - ctx.sigma2)) < 1e-35

    def test_odd_orders_vanish(self):
        ctx = make_context("0.6", 30)
        for order in (1, 3, 7):
            assert float(cumulant_value(order, ctx)) == 0.0

    def test_value_dispatches_even_orders(self):
        ctx = make_context("0.6", 30)
        a = cumulant_value(4, ctx)
        b = cumulant_lambert(2, ctx)
        assert float(abs(a - b)) == 0.0

    def test_rejects_bad_order(self):
        ctx = make_context("0.6", 30)
        with pytest.raises(DomainError):
            cumulant_lambert(0, ctx)
        with pytest.raises(DomainError):
            cumulant_value(0, ctx)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_dual_modulus_symmetry_residual(self, n):
        # kappa_{2n}(k') = (-1)^n (K'/K)^(2n) kappa_{2n}(k)
        res = cumulant_symmetry_residual(n, "0.3", 40)
        assert float(abs(res)) < 1e-32


class TestLatticeRoute:
    def test_cross_oracle_n2(self):
        ctx = lemniscatic_context(30)
        approx = cumulant_eisenstein(2, ctx, 2000)
        exact = cumulant_lambert(2, ctx)
        assert float(abs(approx.value - exact)) < 1e-6

    def test_cross_oracle_n3(self):
        ctx = lemniscatic_context(30)
        approx = cumulant_eisenstein(3, ctx, 500)
        exact = cumulant_lambert(3, ctx)
        assert float(abs(approx.value - exact)) < 1e-8

    def test_tail_is_positive_and_shrinks(self):
        ctx = lemniscatic_context(30)
        t_small = cumulant_eisenstein(3, ctx, 100).tail
        t_large = cumulant_eisenstein(3, ctx, 400).tail
        assert float(t_small) > 0
        assert float(t_large) < float(t_small)

    def test_off_lemniscatic_modulus(self):
        ctx = make_context("0.6", 30)
        approx = cumulant_eisenstein(2, ctx, 1500)
        exact = cumulant_lambert(2, ctx)
        assert float(abs(approx.value - exact)) < 1e-5

    def test_rejects_n1_and_bad_cutoff(self):
        ctx = lemniscatic_context(30)
        with pytest.raises(DomainError):
            cumulant_eisenstein(1, ctx, 100)
        with pytest.raises(DomainError):
            cumulant_eisenstein(2, ctx, 0)
