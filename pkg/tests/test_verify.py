"""Verification harness: ground-truth series, identity cells, and the
suite runner's error discipline."""

import dataclasses
import json

import pytest

from thetakit.numkernel import (
    DomainError,
    hpf,
    lemniscatic_context,
    make_context,
    pow10,
)
from thetakit.verify import (
    default_grid,
    dual_delta_identity_residual,
    hermite_weighted_series,
    parse_modulus,
    run_suite,
    series_moment,
    series_odd_moment,
    suite_tolerance,
    verify_dual_moment_relation,
    verify_jacobi_transform,
    verify_lambert_schett,
    verify_legendre,
    verify_phi_consistency,
    verify_romik11,
    verify_theorem1,
    verify_theorem3,
    verify_variance_symmetry,
)


@pytest.fixture(scope="module")
def ctx06():
    return make_context("0.6", 40)


class TestParseAndTolerance:
    def test_lemniscatic_token(self):
        k = parse_modulus("1/sqrt2", 40)
        assert float(abs(k * k - hpf("0.5", 40))) < 1e-37

    def test_decimal_token(self):
        assert float(parse_modulus("0.3", 30)) == 0.3

    def test_bad_token(self):
        with pytest.raises(ValueError):
            parse_modulus("half", 30)

    def test_suite_tolerance(self):
        assert float(suite_tolerance(50)) == 1e-42
        assert float(suite_tolerance(30)) == 1e-22


class TestGroundTruthSeries:
    def test_zeroth_moment_is_one(self, ctx06):
        assert float(abs(series_moment(0, ctx06) - 1)) < 1e-37

    def test_second_moment_is_variance(self, ctx06):
        assert float(abs(series_moment(1, ctx06) - ctx06.sigma2)) < 1e-36

    def test_odd_moments_vanish(self, ctx06):
        for j in range(3):
            assert float(series_odd_moment(j, ctx06)) == 0.0

    def test_hermite_weighted_zeroth(self, ctx06):
        assert float(abs(hermite_weighted_series(0, ctx06) - 1)) < 1e-37

    def test_rejects_negative_index(self, ctx06):
        with pytest.raises(DomainError):
            series_moment(-1, ctx06)


class TestIdentityCells:
    @pytest.mark.parametrize("n", range(5))
    def test_theorem1(self, ctx06, n):
        rep = verify_theorem1(n, ctx06, "0.6")
        assert rep.passed, rep.residual.to_decimal_string()

    @pytest.mark.parametrize("n", range(5))
    def test_theorem3(self, ctx06, n):
        rep = verify_theorem3(n, ctx06, "0.6")
        assert rep.passed

    def test_theorem3_n1_catches_sign_flip(self, ctx06):
        # mu_2 = sigma^2 forces the +sigma^2/2 convention; the report for
        # n=1 would fail loudly under the minus variant
        rep = verify_theorem3(1, ctx06, "0.6")
        assert rep.passed
        assert float(rep.rhs) == pytest.approx(float(ctx06.sigma2))

    @pytest.mark.parametrize("n", range(9))
    def test_romik_eq11(self, n):
        rep = verify_romik11(n, 50)
        assert rep.passed, (n, rep.residual.to_decimal_string())

    def test_romik_precision_scaling(self):
        coarse = verify_romik11(4, 30)
        fine = verify_romik11(4, 50)
        assert float(fine.residual) < float(coarse.residual) * 1e-10 or float(fine.residual) == 0.0

    @pytest.mark.parametrize("n", range(2, 6))
    def test_lambert_schett(self, ctx06, n):
        assert verify_lambert_schett(n, ctx06, "0.6").passed

    @pytest.mark.parametrize("c", ["0.37", "1", "5"])
    def test_jacobi_transform(self, c):
        assert verify_jacobi_transform(c, 40).passed

    def test_legendre_and_variance(self):
        k = parse_modulus("0.3", 40)
        assert verify_legendre(k, 40, "0.3").passed
        assert verify_variance_symmetry(k, 40, "0.3").passed

    @pytest.mark.parametrize("n", range(1, 5))
    def test_dual_moment_relation(self, n):
        k = parse_modulus("0.3", 40)
        assert verify_dual_moment_relation(n, k, 40, "0.3").passed

    def test_dual_delta_closed_form(self):
        k = parse_modulus("0.6", 40)
        assert float(abs(dual_delta_identity_residual(k, 40))) < 1e-36

    def test_phi_consistency(self):
        assert verify_phi_consistency(50).passed


class TestReports:
    def test_report_is_frozen(self):
        rep = verify_phi_consistency(30)
        with pytest.raises(dataclasses.FrozenInstanceError):
            rep.passed = False

    def test_to_dict_serializes(self):
        rep = verify_legendre(parse_modulus("0.3", 30), 30, "0.3")
        payload = rep.to_dict()
        assert payload["identity"] == "legendre"
        assert payload["passed"] is True
        assert isinstance(payload["residual"], str)
        json.dumps(payload)


class TestSuiteRunner:
    def test_default_grid_shape(self):
        assert len(default_grid()) == 94
        assert len(default_grid(nmax=2)) == 34

    def test_small_grid_all_pass(self):
        reports = run_suite(default_grid(nmax=3), digits=30)
        assert reports and all(r.passed for r in reports)

    def test_domain_error_cell_is_captured(self):
        reports = run_suite([("theorem1", 2, "1.5")], digits=30)
        assert len(reports) == 1
        assert not reports[0].passed
        assert reports[0].error is not None

    def test_unknown_identity_is_captured(self):
        reports = run_suite([("no_such_identity", None, "0.5")], digits=30)
        assert not reports[0].passed
        assert "no_such_identity" in reports[0].error

    def test_context_cache_reuses_token(self):
        # two cells with the same token must agree bit for bit
        reports = run_suite(
            [("legendre", None, "0.44"), ("variance_symmetry", None, "0.44")],
            digits=30,
        )
        assert all(r.passed for r in reports)
