"""Command-line interface: JSON payloads, exit codes, mutation control."""

import json

import pytest

import replicaq.cli as cli
from replicaq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    payload = json.loads(out.out) if out.out.strip() else None
    return code, payload, out.err


class TestCoeffs:
    def test_j_oracle_four_terms(self, capsys):
        code, payload, _ = run(capsys, "coeffs", "j", "--terms", "4")
        assert code == 0 and payload["status"] == "computed"
        assert payload["schema"] == 1
        assert payload["coefficients"] == [
            "196884", "21493760", "864299970", "20245856256"]

    def test_fiction_zero(self, capsys):
        code, payload, _ = run(capsys, "coeffs", "fiction:c=0", "--terms", "5")
        assert code == 0
        assert payload["coefficients"] == ["0"] * 5

    def test_dual_path_verified(self, capsys):
        code, payload, _ = run(capsys, "coeffs", "j", "--terms", "200",
                               "--method", "recurrence,oracle")
        assert code == 0 and payload["status"] == "verified"

    def test_basis_method(self, capsys):
        code, payload, _ = run(capsys, "coeffs", "j", "--terms", "30",
                               "--method", "basis,oracle")
        assert code == 0 and payload["status"] == "verified"

    def test_eta_spec(self, capsys):
        code, payload, _ = run(capsys, "coeffs", "eta:1^24/2^24+24", "--terms", "3")
        assert code == 0
        assert payload["coefficients"] == ["276", "-2048", "11202"]

    def test_bad_spec_exits_2(self, capsys):
        code, payload, _ = run(capsys, "coeffs", "nonsense")
        assert code == 2 and payload["status"] == "error"

    def test_bad_terms_exits_2(self, capsys):
        code, payload, _ = run(capsys, "coeffs", "j", "--terms", "0")
        assert code == 2


class TestClassify24:
    def test_thirty_shapes(self, capsys):
        code, payload, _ = run(capsys, "classify24", "--bound", "150")
        assert code == 0 and payload["count"] == 30
        assert "1^24" in payload["shapes"]
        assert "1^1 2^1 7^1 14^1" in payload["shapes"]

    def test_low_bound_rejected(self, capsys):
        code, payload, _ = run(capsys, "classify24", "--bound", "10")
        assert code == 2


class TestNumerology:
    def test_verified(self, capsys):
        code, payload, _ = run(capsys, "numerology")
        assert code == 0 and payload["status"] == "verified"
        checks = payload["checks"]
        assert checks["sum_squares_1_to_24"]["value"] == "4900"
        assert checks["j_coefficient_squares_mod_70"]["value_mod_70"] == "42"
        assert checks["census_sums"]["both_616"]
        assert payload["replicable_function_census"] == {
            "count": 616, "provenance": "quoted"}


class TestVerify:
    @pytest.mark.parametrize("suite", ["faber", "grunsky", "replicable",
                                       "basis", "hecke", "mahler"])
    def test_each_suite(self, capsys, suite):
        code, payload, _ = run(capsys, "verify", suite)
        assert code == 0 and payload["status"] == "verified"
        assert payload["suites"][suite]["ok"]

    def test_all(self, capsys):
        code, payload, _ = run(capsys, "verify", "all")
        assert code == 0 and len(payload["suites"]) == 6

    def test_unknown_suite(self, capsys):
        code, payload, _ = run(capsys, "verify", "bogus")
        assert code == 2 and payload["status"] == "error"

    def test_injected_bug_falsifies(self, capsys, monkeypatch):
        # mutation control: corrupt the oracle seen by one suite
        import replicaq.qseries as qs
        real = qs.j_int_coeffs

        def corrupted(n):
            c = real(n)
            if len(c) > 3:
                c[3] += 1  # perturbs a_2
            return c

        monkeypatch.setattr(cli, "j_oracle",
                            lambda t: qs.QSeries(-1, 1, corrupted(int(t) + 2), t))
        code, payload, _ = run(capsys, "verify", "replicable")
        assert code == 1 and payload["status"] == "falsified"


class TestOutputContract:
    def test_json_on_stdout_summary_on_stderr(self, capsys):
        code = main(["numerology"])
        out = capsys.readouterr()
        json.loads(out.out)
        assert out.err.strip() != ""
        assert "{" not in out.err
