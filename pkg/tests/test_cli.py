import csv
import io
import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from hankelforge.caratheodory import SchurParams
from hankelforge.certify import CertificationReport, GridSpec, extremal_check, search_max
from hankelforge.classes import FunctionClass
from hankelforge.cli import EXIT_CERT, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK, main
from hankelforge.report import emit_records, emit_report

SMALL = ["--n-tau1", "32", "--n-tau2-modulus", "32", "--n-tau2-phase", "32", "--n-tau3-phase", "8"]


def run(capsysbinary, *argv):
    code = main(list(argv))
    out, err = capsysbinary.readouterr()
    return code, out, err.decode()


def run_exit(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    return exc.value.code, capsys.readouterr().err


class TestSubcommands:
    def test_ymax_trivial(self, capsysbinary):
        code, out, _ = run(capsysbinary, "ymax", "--A", "0", "--B", "0", "--C", "0")
        assert code == EXIT_OK
        assert json.loads(out)["value"] == 1

    def test_ymax_with_oracle(self, capsysbinary):
        code, out, _ = run(capsysbinary, "ymax", "--A", "-1.78", "--B", "-1.43", "--C", "1.5", "--oracle")
        rec = json.loads(out)
        assert code == EXIT_OK
        assert rec["branch"] == "R_sqrt"
        assert rec["oracle_difference"] < 1e-6

    def test_hankel_bounded_turning_sharp_value(self, capsysbinary):
        code, out, _ = run(capsysbinary, "hankel", "--class", "r-half", "--c1", "0", "--c2", "2", "--c3", "0")
        rec = json.loads(out)
        assert code == EXIT_OK
        assert rec["value"]["re"] == pytest.approx(-1 / 36, abs=1e-15)
        assert rec["bound_exact"] == "1/36"

    def test_hankel_tau_all_forms(self, capsysbinary):
        code, out, _ = run(capsysbinary, "hankel", "--class", "starlike-half", "--tau1", str(1 / math.sqrt(6)),
                           "--tau2-re", "1", "--tau3-re", "1")
        rec = json.loads(out)
        assert code == EXIT_OK
        assert set(rec["forms"]) == {"gamma", "a", "c", "tau"}
        assert rec["abs"] == pytest.approx(19 / 288, abs=1e-14)

    def test_hankel_from_gammas(self, capsysbinary):
        code, out, _ = run(capsysbinary, "hankel", "--g1", "1", "--g2", "2", "--g3", "3")
        assert code == EXIT_OK
        assert json.loads(out)["value"]["re"] == -1

    def test_hankel_from_a_checks_gamma_path(self, capsysbinary):
        code, out, _ = run(capsysbinary, "hankel", "--a2", "2", "--a3", "3", "--a4", "4")
        rec = json.loads(out)
        assert code == EXIT_OK
        assert rec["value"]["re"] == pytest.approx(13 / 12)
        assert rec["cross_form_spread"] < 1e-12

    def test_invert_koebe(self, capsysbinary):
        code, out, _ = run(capsysbinary, "invert", "--a2", "2", "--a3", "3", "--a4", "4", "--a5", "5")
        rec = json.loads(out)
        assert code == EXIT_OK
        assert [rec[f"A{k}"]["re"] for k in range(2, 6)] == [-2, 5, -14, 42]

    def test_logcoeffs_complex_input(self, capsysbinary):
        code, out, _ = run(capsysbinary, "logcoeffs", "--a2", "0.1", "--a2-im", "0.2", "--a3", "0",
                           "--a4", "0", "--a5", "0")
        rec = json.loads(out)
        assert code == EXIT_OK
        assert rec["Gamma1"] == {"re": -0.05, "im": -0.1}

    def test_coeffs(self, capsysbinary):
        code, out, _ = run(capsysbinary, "coeffs", "--tau1", "0", "--tau2-re", "1", "--class", "convex-half")
        rec = json.loads(out)
        assert code == EXIT_OK
        assert rec["c2"]["re"] == 2
        assert rec["a3"]["re"] == pytest.approx(1 / 6)

    def test_certify_small_grid_all_classes(self, capsysbinary):
        code, out, _ = run(capsysbinary, "certify", *SMALL, "--rounds", "2")
        recs = json.loads(out)
        assert code == EXIT_OK
        assert [r["bound_exact"] for r in recs] == ["19/288", "1/144", "1/36"]

    def test_certify_coarse_grid_misses_attainment(self, capsysbinary):
        # without refinement the starlike grid maximum is more than 1e-6 below 19/288
        code, out, _ = run(capsysbinary, "certify", "--class", "starlike-half", *SMALL, "--rounds", "0")
        rec = json.loads(out)
        assert rec["gap"] > 1e-6
        assert code == EXIT_CERT

    def test_extremal(self, capsysbinary):
        code, out, _ = run(capsysbinary, "extremal", "--class", "starlike-half")
        rec = json.loads(out)
        assert code == EXIT_OK
        labels = {c["label"]: c["membership_ok"] for c in rec["candidates"]}
        assert labels == {"stated": False, "witness": True}

    def test_selftest(self, capsysbinary):
        code, out, _ = run(capsysbinary, "selftest", "--scale", "0.2", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out.decode())))
        assert code == EXIT_OK
        assert {r["suite"] for r in rows} >= {"series", "ymax", "hankel", "certify"}
        assert all(r["ok"] == "True" for r in rows)


class TestValidation:
    @pytest.mark.parametrize(
        "argv,flag",
        [
            (["ymax", "--A", "abc", "--B", "0", "--C", "0"], "--A"),
            (["ymax", "--A", "nan", "--B", "0", "--C", "0"], "--A"),
            (["ymax", "--B", "0", "--C", "0"], "--A"),
            (["hankel", "--class", "bogus", "--c1", "0"], "--class"),
            (["certify", "--n-tau1", "ten"], "--n-tau1"),
            (["certify", "--format", "xml"], "--format"),
            (["frobnicate"], "SUBCOMMAND"),
        ],
    )
    def test_parse_errors_name_the_flag(self, capsys, argv, flag):
        code, err = run_exit(capsys, *argv)
        assert code == EXIT_INPUT
        assert flag in err

    @pytest.mark.parametrize(
        "argv,flag",
        [
            (["hankel", "--class", "r-half", "--c1", "0", "--c2", "2.5", "--c3", "0"], "--c1/--c2/--c3"),
            (["hankel", "--c1", "0", "--c2", "1", "--c3", "0"], "--class"),
            (["hankel", "--class", "r-half", "--c1", "0", "--a2", "1"], "--c1"),
            (["coeffs", "--tau1", "0.5", "--tau2-re", "2"], "--tau2"),
            (["coeffs", "--tau1", "1.5"], "--tau1"),
            (["invert", "--a2", "1"], "--a3"),
            (["invert", "--a2", "1", "--a3", "0", "--a4", "0", "--a5", "0", "--order", "4"], "--order"),
            (["logcoeffs", "--a2-im", "1", "--a3", "0", "--a4", "0", "--a5", "0"], "--a2-im"),
            (["certify", "--n-tau1", "8"], "--n-tau"),
        ],
    )
    def test_semantic_errors_name_the_flag(self, capsysbinary, argv, flag):
        code, out, err = run(capsysbinary, *argv)
        assert code == EXIT_INPUT
        assert out == b""
        assert flag in err

    def test_bad_thread_count(self, capsysbinary, monkeypatch):
        monkeypatch.setenv("HANKELFORGE_THREADS", "0")
        code, _, err = run(capsysbinary, "ymax", "--A", "0", "--B", "0", "--C", "0")
        assert code == EXIT_INPUT
        assert "HANKELFORGE_THREADS" in err

    def test_unwritable_output(self, capsysbinary, tmp_path):
        target = tmp_path / "missing" / "out.json"
        code, _, err = run(capsysbinary, "ymax", "--A", "0", "--B", "0", "--C", "0", "--output", str(target))
        assert code == EXIT_INPUT
        assert "--output" in err

    def test_output_file(self, capsysbinary, tmp_path):
        target = tmp_path / "out.json"
        code, out, _ = run(capsysbinary, "ymax", "--A", "1", "--B", "0", "--C", "0", "--output", str(target))
        assert code == EXIT_OK and out == b""
        assert json.loads(target.read_text())["value"] == 2


class TestExitCodes:
    def test_inconsistent_oracle_gives_three(self, capsysbinary, monkeypatch):
        import hankelforge.cli as cli

        monkeypatch.setattr(cli, "ORACLE_TOL", -1.0)
        code, _, _ = run(capsysbinary, "ymax", "--A", "1", "--B", "1", "--C", "1", "--oracle")
        assert code == EXIT_INCONSISTENT


@pytest.fixture(scope="module")
def convex():
    return search_max(FunctionClass.CONVEX_HALF, GridSpec(32, 32, 32, 8))


class TestReports:
    def test_json_schema(self, convex):
        rec = json.loads(emit_report(convex, "json"))
        assert rec["class"] == "convex-half"
        assert rec["bound_exact"] == "1/144"
        assert rec["bound_float"] == pytest.approx(1 / 144)
        assert set(rec["witness"]) >= {"tau1", "tau2_re", "tau2_im", "tau3_re", "tau3_im"}
        assert rec["grid"]["n_tau1"] == 32
        assert len(rec["diagnostics"]) == 32

    def test_fifteen_significant_digits(self, convex):
        rec = json.loads(emit_report(convex, "json"))
        for x in (rec["search_max"], rec["bound_float"], rec["witness"]["tau2_re"]):
            assert float(f"{x:.15g}") == x

    def test_csv_flattens_witness(self, convex):
        rows = list(csv.DictReader(io.StringIO(emit_report(convex, "csv").decode())))
        assert len(rows) == 1
        assert {"witness_tau1", "witness_tau3_im", "grid_n_tau1"} <= set(rows[0])
        assert "diagnostics" not in rows[0]

    def test_text(self, convex):
        text = emit_report(convex, "text").decode()
        assert "bound_exact: 1/144" in text

    def test_empty_diagnostics_is_valid_json(self):
        r = CertificationReport(FunctionClass.CONVEX_HALF, Fraction(1, 144), 0.0069, SchurParams(0.0, 1.0, 1.0),
                                0.0069, 1 / 144 - 0.0069, {})
        rec = json.loads(emit_report(r))
        assert rec["diagnostics"] == []

    def test_extremal_report(self):
        rec = json.loads(emit_report(extremal_check(FunctionClass.BOUNDED_TURNING_HALF, order=40)))
        assert rec["bound_exact"] == "1/36"
        assert rec["candidates"][0]["a3"]["re"] == pytest.approx(1 / 3)

    def test_non_finite_numbers(self):
        rec = json.loads(emit_records([{"x": float("-inf"), "y": float("nan")}]))
        assert rec == {"x": "-inf", "y": "nan"}

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_records([{}], "yaml")

    def test_unknown_report_type(self):
        with pytest.raises(TypeError):
            emit_report(object())


class TestDeterminism:
    def test_byte_identical_runs(self, capsysbinary):
        argv = ["certify", "--class", "starlike-half", *SMALL, "--seed", "7"]
        _, first, _ = run(capsysbinary, *argv)
        _, second, _ = run(capsysbinary, *argv)
        assert first == second

    def test_thread_count_does_not_change_output(self, capsysbinary, monkeypatch):
        argv = ["certify", "--class", "r-half", *SMALL]
        monkeypatch.setenv("HANKELFORGE_THREADS", "1")
        _, one, _ = run(capsysbinary, *argv)
        monkeypatch.setenv("HANKELFORGE_THREADS", "4")
        _, four, _ = run(capsysbinary, *argv)
        assert one == four

    def test_selftest_seed_reproducible(self, capsysbinary):
        _, a, _ = run(capsysbinary, "selftest", "--scale", "0.1", "--seed", "3")
        _, b, _ = run(capsysbinary, "selftest", "--scale", "0.1", "--seed", "3")
        assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hankelforge", "ymax", "--A", "0", "--B", "0", "--C", "0",
                           "--format", "csv"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("0.0,0.0,0.0,1.0")
