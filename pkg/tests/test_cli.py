"""Command-line interface: output forms, files, exit codes."""

import json
import subprocess
import sys


from itoflow import Expansion, SurjElement, read_bundle
from itoflow.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out = capsys.readouterr() if capsys else None
    return code, out


class TestQsh:
    def test_text_output(self, capsys):
        code, out = run_cli("qsh", "1.2", "3", capsys=capsys)
        assert code == 0
        assert out.out.strip() == "I_{1[23]} + I_{[13]2} + I_{123} + I_{132} + I_{312}"

    def test_json_output_parses_back(self, capsys):
        code, out = run_cli("qsh", "1", "1", "--json", capsys=capsys)
        assert code == 0
        e = Expansion.from_json_dict(json.loads(out.out))
        assert sum(c for _, c in e) == 3  # 2 (1)(1) + [11]

    def test_unit_literal(self, capsys):
        code, out = run_cli("qsh", "e", "2", capsys=capsys)
        assert code == 0
        assert out.out.strip() == "I_{2}"

    def test_empty_argument_is_unit(self, capsys):
        code, out = run_cli("qsh", "", "1", capsys=capsys)
        assert code == 0
        assert out.out.strip() == "I_{1}"

    def test_three_words_fold_to_thirteen_terms(self, capsys):
        code, out = run_cli("qsh", "1", "2", "3", capsys=capsys)
        assert code == 0
        assert out.out.count("+") == 12  # 13 terms, all with coefficient 1

    def test_bad_literal_exits_2(self, capsys):
        code, out = run_cli("qsh", "1..2", capsys=capsys)
        assert code == 2
        assert "error" in out.err

    def test_cap_exceeded_exits_2(self, capsys):
        from itoflow import set_weight_cap

        old = set_weight_cap(8)
        try:
            code, out = run_cli("qsh", "1.1.1.1.1", "1.1.1.1.1", capsys=capsys)
        finally:
            set_weight_cap(old)
        assert code == 2
        assert "cap" in out.err

    def test_max_grade_flag_raises_cap(self, capsys):
        from itoflow import set_grade_cap, set_weight_cap

        old_w, old_g = set_weight_cap(8), set_grade_cap(6)
        try:
            code, out = run_cli(
                "qsh", "1.1.1.1.1", "1.1.1.1.1", "--max-grade", "10", capsys=capsys
            )
        finally:
            set_weight_cap(old_w)
            set_grade_cap(old_g)
        assert code == 0


class TestSurjLog:
    def test_forms_agree(self, capsys):
        outputs = []
        for form in ("closed", "series", "subset"):
            code, out = run_cli(
                "surj-log", "--grade", "3", "--form", form, "--json", capsys=capsys
            )
            assert code == 0
            outputs.append(SurjElement.from_json_dict(json.loads(out.out)))
        assert outputs[0] == outputs[1] == outputs[2]

    def test_text_form(self, capsys):
        code, out = run_cli("surj-log", "--grade", "1", capsys=capsys)
        assert code == 0
        assert out.out.strip() == "(1)"


class TestLogflow:
    def test_golden_order_two(self, capsys):
        code, out = run_cli("logflow", "--order", "2", "--continuous", capsys=capsys)
        assert code == 0
        lines = out.out.strip().splitlines()
        assert lines == [
            "V_i I_{i}",
            "-1/2 V_i V_j I_{[ij]}",
            "1/2 V_i V_j I_{ij}",
            "-1/2 V_i V_j I_{ji}",
        ]

    def test_default_keeps_jump_terms(self, capsys):
        code, cont = run_cli("logflow", "--order", "3", "--continuous", capsys=capsys)
        code, jump = run_cli("logflow", "--order", "3", capsys=capsys)
        assert len(jump.out.splitlines()) == len(cont.out.splitlines()) + 1

    def test_matrix_variant(self, capsys):
        code, out = run_cli("logflow", "--order", "1", "--matrix", "2", capsys=capsys)
        assert code == 0
        assert "(1,1):" in out.out


class TestMatrixLog:
    def test_round_trips_with_library(self, capsys):
        from itoflow import MatrixExpansion, matrix_log

        code, out = run_cli(
            "matrix-log", "--dim", "2", "--order", "2", "--json", capsys=capsys
        )
        assert code == 0
        assert MatrixExpansion.from_json_dict(json.loads(out.out)) == matrix_log(2, 2)

    def test_taylor_flag(self, capsys):
        from itoflow import MatrixExpansion, matrix_ito_taylor

        code, out = run_cli(
            "matrix-log", "--dim", "1", "--order", "3", "--taylor", "--json",
            capsys=capsys,
        )
        assert MatrixExpansion.from_json_dict(json.loads(out.out)) == matrix_ito_taylor(1, 3)


class TestVerify:
    def test_algebra_suite_passes(self, capsys):
        code, out = run_cli(
            "verify", "algebra", "--grade", "3", "--deterministic", capsys=capsys
        )
        assert code == 0
        assert "PASS" in out.out
        assert "FAIL" not in out.out

    def test_json_report_schema(self, capsys):
        code, out = run_cli(
            "verify", "theorem", "--grade", "3", "--json", "--deterministic",
            capsys=capsys,
        )
        assert code == 0
        payload = json.loads(out.out)
        assert payload["pass"] is True
        assert "timestamp" not in payload
        for case in payload["cases"]:
            assert set(case) == {
                "test", "max_abs_err", "tolerance", "pass", "seed",
                "grid_points", "paths",
            }

    def test_deterministic_json_is_byte_identical(self, capsys):
        argv = (
            "verify", "pathwise", "--steps", "256", "--seed", "11",
            "--json", "--deterministic",
        )
        code, first = run_cli(*argv, capsys=capsys)
        assert code == 0
        code, second = run_cli(*argv, capsys=capsys)
        assert code == 0
        assert first.out == second.out


class TestSimulate:
    def test_csv_to_stdout(self, capsys):
        code, out = run_cli(
            "simulate", "--drivers", "brownian:1.0", "--steps", "4", capsys=capsys
        )
        assert code == 0
        lines = out.out.strip().splitlines()
        assert lines[0] == "t,x1"
        assert len(lines) == 6  # header + 5 grid points

    def test_binary_file_reads_back(self, tmp_path, capsys):
        target = tmp_path / "paths.itopath"
        code, _ = run_cli(
            "simulate", "--drivers", "brownian:1.0,poisson:2.0", "--steps", "16",
            "--seed", "3", "--out", str(target), capsys=capsys,
        )
        assert code == 0
        bundle = read_bundle(target)
        assert bundle.letters() == [1, 2]
        assert bundle[1].n_steps == 16

    def test_unknown_driver_exits_2(self, capsys):
        code, out = run_cli("simulate", "--drivers", "gamma:1.0", capsys=capsys)
        assert code == 2


class TestFlowCompare:
    def test_small_run_reports_decreasing_errors(self, capsys):
        code, out = run_cli(
            "flow-compare", "--steps", "128", "--paths", "8", "--orders", "1,2",
            "--seed", "4", "--json", "--deterministic", capsys=capsys,
        )
        assert code == 0
        payload = json.loads(out.out)
        assert (
            payload["mean_strong_error_log"]["1"]
            > payload["mean_strong_error_log"]["2"]
        )


def test_console_script_runs():
    result = subprocess.run(
        [sys.executable, "-m", "itoflow.cli", "qsh", "1", "2"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert result.returncode == 0
    assert "I_{12}" in result.stdout
