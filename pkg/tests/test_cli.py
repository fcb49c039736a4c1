"""Command-line surface: outputs, exit codes, reproducibility."""

import json
import subprocess
import sys

import pytest

from conewalks.cli import main
from conewalks.polyparse import PolyParseError, parse_poly2
from conewalks.polynomials import Poly2


class TestPolyParser:
    def test_examples(self):
        assert parse_poly2("(i+1)*(j+1)") == (Poly2.x() + 1) * (Poly2.y() + 1)
        assert parse_poly2("2*i^3 - 5/2") == Poly2({(3, 0): 2, (0, 0): "-5/2"})
        assert parse_poly2("x*y") == parse_poly2("i*j")

    def test_unary_minus(self):
        assert parse_poly2("-i + 3") == -Poly2.x() + 3

    def test_garbage_rejected(self):
        with pytest.raises(PolyParseError):
            parse_poly2("i +* j")
        with pytest.raises(PolyParseError):
            parse_poly2("k + 1")


class TestCommands:
    def test_polyorder(self, capsys, tmp_path):
        out = tmp_path / "order.json"
        code = main(
            ["polyorder", "--model", "simple", "--poly", "(i+1)*(j+1)", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["order"] == 1
        assert payload["schema"] == "1"

    def test_enumerate_csv(self, tmp_path):
        out = tmp_path / "counts.csv"
        code = main(["enumerate", "--model", "simple", "--n", "4", "--out", str(out)])
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "n,i,j,count"
        assert "2,0,0,2" in lines

    def test_fit(self, tmp_path):
        out = tmp_path / "fit.json"
        code = main(
            [
                "fit", "--model", "diagonal", "--target", "0,0",
                "--terms", "3", "--nmax", "2000", "--out", str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert abs(payload["coefficients"][0] - 1.0) < 1e-6
        assert len(payload["coefficients_exact"]) == 3

    def test_fit_reproducible(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        argv = ["fit", "--model", "tandem", "--target", "0,0", "--terms", "3", "--nmax", "900"]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_genfun_verify(self, tmp_path):
        out = tmp_path / "verify.json"
        code = main(["genfun-verify", "--model", "tandem", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["all_passed"] is True
        assert payload["first_failure"] is None

    def test_continuum_heatkernel(self, tmp_path):
        out = tmp_path / "hk.json"
        code = main(
            [
                "continuum", "heatkernel", "--xi", "1.5707963267948966",
                "--from", "1,0.7853981633974483", "--to", "1,0.7853981633974483",
                "--t", "8", "--eps", "1e-12", "--out", str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["value"] == pytest.approx(0.00027468109778724215, rel=1e-10)

    def test_continuum_laplace_verify(self, tmp_path):
        out = tmp_path / "lv.json"
        code = main(
            [
                "continuum", "laplace-verify", "--s11", "1", "--s12", "-0.5",
                "--s22", "1", "--pdeg", "2", "--out", str(out),
            ]
        )
        assert code == 0
        assert json.loads(out.read_text())["passed"] is True

    def test_bad_model_exits_nonzero(self, capsys):
        code = main(["enumerate", "--model-file", "/nonexistent.json", "--n", "3"])
        assert code == 2

    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "conewalks.cli", "polyorder", "--model",
             "tandem", "--poly", "(i+1)*(j+1)*(i+j+2)"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert '"order": 1' in proc.stdout

    def test_report_all_wiring(self, tmp_path, monkeypatch, capsys):
        # run the report plumbing over a two-check subset (the full suite is
        # exercised by tests/test_acceptance.py)
        from conewalks import acceptance

        monkeypatch.setattr(
            acceptance,
            "ALL_CHECKS",
            [acceptance.check_discrete_identities, acceptance.check_kernel_identities],
        )
        out = tmp_path / "report.json"
        code = main(["report-all", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["all_passed"] is True
        assert [c["criterion"] for c in payload["checks"]] == [2, 5]
        stderr = capsys.readouterr().err
        assert "[PASS] criterion 2" in stderr
