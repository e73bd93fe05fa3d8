"""End-to-end command line tests: exact output formats, exit codes, and
serialization round-trips."""

import csv
import io
import json
import subprocess
import sys

import pytest

from thetakit.cli import main


def run_cli(*argv, capsys=None):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSequences:
    def test_d_golden(self, capsys):
        code, out, _ = run_cli("sequences", "d", "--count", "7", capsys=capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "d(1) = 1"
        assert lines[1] == "d(2) = -1"
        assert lines[6] == "d(7) = 82018251"

    def test_q_nonzero_subsequence(self, capsys):
        code, out, _ = run_cli("sequences", "q", "--count", "3", capsys=capsys)
        assert code == 0
        assert out.splitlines() == ["Q_4 = 2", "Q_8 = -144", "Q_12 = 96768"]

    def test_dk_scaled_golden(self, capsys):
        code, out, _ = run_cli(
            "sequences", "dk", "--p", "3", "--count", "5", "--scaled", capsys=capsys
        )
        assert code == 0
        assert out.splitlines() == [
            "d_3(1) = 1",
            "d_3(2) = 3",
            "d_3(3) = 7",
            "d_3(4) = 2953",
            "d_3(5) = 291969",
        ]

    def test_dk_raw_rationals(self, capsys):
        code, out, _ = run_cli("sequences", "dk", "--p", "3", "--count", "2", capsys=capsys)
        assert code == 0
        assert out.splitlines() == ["R_4(1/3) = 4/9", "R_8(1/3) = 16/27"]

    def test_dk_scaled_unknown_p_is_usage_error(self, capsys):
        code, _, err = run_cli(
            "sequences", "dk", "--p", "11", "--count", "3", "--scaled", capsys=capsys
        )
        assert code == 2
        assert "scal" in err.lower() or "p" in err.lower()

    def test_json_shape(self, capsys):
        code, out, _ = run_cli(
            "sequences", "d", "--count", "3", "--format", "json", capsys=capsys
        )
        assert code == 0
        payload = json.loads(out)
        assert payload == {"name": "d", "params": {"count": 3}, "terms": ["1", "-1", "51"]}

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            "sequences", "d", "--count", "3", "--format", "csv", capsys=capsys
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["index", "term"]
        assert rows[1:] == [["1", "1"], ["2", "-1"], ["3", "51"]]


class TestPolys:
    def test_text_contains_all_families(self, capsys):
        code, out, _ = run_cli("polys", "--nmax", "2", capsys=capsys)
        assert code == 0
        assert "S_1(m) = 2*m - 1" in out
        assert "P_4(m) = 16*m^3 - 24*m^2 + 8*m" in out
        assert "R_4(m) = -2*m^2 + 2*m" in out

    def test_json_families(self, capsys):
        code, out, _ = run_cli("polys", "--nmax", "3", "--format", "json", capsys=capsys)
        payload = json.loads(out)
        assert code == 0
        assert payload["nmax"] == 3
        assert payload["schett"][1] == "2*m - 1"
        assert len(payload["cumulant"]) == 3
        assert len(payload["moment"]) == 4


class TestVerify:
    def test_romik_all_pass(self, capsys):
        code, out, _ = run_cli("verify", "romik", "--nmax", "8", capsys=capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert sum(1 for ln in lines if ln.startswith("[PASS] romik_eq11")) == 9
        assert lines[-1].endswith("passed at 50 digits")

    def test_theorem1_with_modulus(self, capsys):
        code, out, _ = run_cli(
            "verify", "theorem1", "--k", "0.6", "--digits", "40", "--nmax", "4",
            capsys=capsys,
        )
        assert code == 0
        assert "[FAIL]" not in out

    def test_theorem3_spec_example(self, capsys):
        code, out, _ = run_cli(
            "verify", "theorem3", "--k", "0.3", "--nmax", "6", "--digits", "30",
            capsys=capsys,
        )
        assert code == 0
        assert "tolerance=1.0e-22" in out

    def test_all_small_grid(self, capsys):
        code, out, _ = run_cli(
            "verify", "all", "--nmax", "2", "--digits", "30", capsys=capsys
        )
        assert code == 0
        assert "[FAIL]" not in out

    def test_symmetry_suite(self, capsys):
        code, out, _ = run_cli("verify", "symmetry", "--digits", "30", capsys=capsys)
        assert code == 0
        assert "variance_symmetry" in out and "dual_moment_relation" in out

    def test_out_of_domain_modulus_is_usage_error(self, capsys):
        code, _, err = run_cli("verify", "all", "--k", "1.5", capsys=capsys)
        assert code == 2
        assert "0, 1" in err or "interval" in err

    def test_json_report_stream(self, capsys):
        code, out, _ = run_cli(
            "verify", "romik", "--nmax", "2", "--format", "json", capsys=capsys
        )
        assert code == 0
        reports = json.loads(out)
        assert len(reports) == 3
        assert all(r["passed"] for r in reports)
        assert all(r["identity"] == "romik_eq11" for r in reports)


class TestConjecture:
    def test_known_p(self, capsys):
        code, out, _ = run_cli("conjecture", "--p", "6", "--count", "6", capsys=capsys)
        assert code == 0
        assert "scaled=3594330803003" in out
        assert "all scaled values are integers" in out

    def test_p2_reduces_to_d(self, capsys):
        code, out, _ = run_cli("conjecture", "--p", "2", "--count", "4", capsys=capsys)
        assert code == 0
        assert "scaled=849" in out

    def test_unknown_p_factors_denominators(self, capsys):
        code, out, _ = run_cli("conjecture", "--p", "11", "--count", "4", capsys=capsys)
        assert code == 0
        assert "denominator=11^2" in out
        assert "no scaling constant is known" in out

    def test_bad_p_usage_error(self, capsys):
        code, _, err = run_cli("conjecture", "--p", "1", "--count", "3", capsys=capsys)
        assert code == 2


class TestReconcile:
    def test_winner_and_exit_zero(self, capsys):
        code, out, _ = run_cli("reconcile", "--nmax", "3", capsys=capsys)
        assert code == 0
        assert "winner: exponents=(j+1, n-j) sign=(-1)^j" in out
        assert "Q projection [2, 0, -144] vs reference [2, 0, -144]" in out

    def test_nmax_out_of_range(self, capsys):
        code, _, err = run_cli("reconcile", "--nmax", "5", capsys=capsys)
        assert code == 2

    def test_json_verdicts(self, capsys):
        code, out, _ = run_cli("reconcile", "--nmax", "2", "--format", "json", capsys=capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["winner"] == {"exponents": "(j+1, n-j)", "sign": "(-1)^j"}
        assert len(payload["verdicts"]) == 12


class TestPlumbing:
    @pytest.mark.parametrize(
        "argv",
        [
            ("sequences", "d", "--count", "4"),
            ("polys", "--nmax", "3"),
            ("verify", "romik", "--nmax", "2"),
            ("reconcile", "--nmax", "2"),
            ("conjecture", "--p", "5", "--count", "3"),
        ],
    )
    def test_json_output_round_trips_byte_identical(self, argv, capsys):
        code, out, _ = run_cli(*argv, "--format", "json", capsys=capsys)
        assert code == 0
        assert out == json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n"

    def test_out_writes_file(self, tmp_path, capsys):
        target = tmp_path / "d.json"
        code, out, _ = run_cli(
            "sequences", "d", "--count", "3", "--format", "json",
            "--out", str(target), capsys=capsys,
        )
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text()) == {
            "name": "d", "params": {"count": 3}, "terms": ["1", "-1", "51"]
        }

    def test_unknown_flag_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sequences", "d", "--frobnicate"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_unknown_subcommand_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["transmogrify"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_installed_entry_point(self):
        proc = subprocess.run(
            ["thetakit", "sequences", "q", "--count", "2", "--format", "json"],
            capture_output=True, text=True, timeout=60,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["terms"] == ["2", "-144"]

    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "thetakit.cli", "sequences", "d", "--count", "1"],
            capture_output=True, text=True, timeout=60,
        )
        assert proc.returncode == 0
        assert proc.stdout == "d(1) = 1\n"
