"""CLI contract: flags, exit codes, deterministic serialization."""

import csv
import io
import json
import subprocess
import sys

import pytest

from qdeform import q_log
from qdeform.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_qexp(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "qexp", "--q", "0.5", "--x", "6")
        assert code == 0
        assert float(out) == pytest.approx(16.0, rel=1e-14)

    def test_qlog(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "qlog", "--q", "2", "--y", "2")
        assert code == 0
        assert float(out) == 0.5

    def test_qprod(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "qprod", "--q", "0.5",
                               "--x", "4", "--y", "9")
        assert code == 0
        assert float(out) == pytest.approx(16.0, rel=1e-14)

    def test_qratio(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "qratio", "--q", "0.5",
                               "--x", "16", "--y", "9")
        assert code == 0
        assert float(out) == pytest.approx(4.0, rel=1e-14)

    def test_tsallis(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "tsallis", "--q", "2",
                               "--p", "0.5,0.5")
        assert code == 0
        assert float(out) == pytest.approx(0.5, rel=1e-14)

    def test_domain_violation_exits_one_with_constraint(self, capsys):
        code, out, err = run_cli(capsys, "eval", "qexp", "--q", "1.3",
                                 "--x", "4")
        assert code == 1
        assert out == ""
        assert "-0.2" in err  # the offending bracket value is reported

    def test_missing_argument_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "eval", "qexp", "--q", "1.3")
        assert code == 1
        assert "requires" in err

    def test_output_round_trips_exactly(self, capsys):
        _, out, _ = run_cli(capsys, "eval", "qexp", "--q", "1.3", "--x", "-1")
        from qdeform import q_exp
        assert float(out.strip()) == q_exp(1.3, -1.0)


class TestVerify:
    def test_canonical_suite_json(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "canonical", "--seed", "42")
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert payload["seed"] == 42
        assert {c["name"] for c in payload["cases"]} >= {
            "split_probability_invariance", "canonical_reconstruction"}

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "canonical", "--seed", "42",
                               "--format", "csv")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["suite", "seed", "name", "max_rel_err",
                           "tolerance", "pass"]
        assert all(row[0] == "canonical" for row in rows[1:])

    def test_unknown_suite_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "verify", "bogus")
        assert code == 1
        assert "usage" in err.lower()

    def test_exit_two_on_failed_invariant(self, capsys, monkeypatch):
        from qdeform.verify import CaseResult, SuiteReport

        def failing(name, seed):
            return SuiteReport(suite=name, seed=seed, cases=(
                CaseResult(name="forced", max_rel_err=1.0,
                           tolerance=1e-12, passed=False),))

        monkeypatch.setattr("qdeform.cli.run_suite", failing)
        code, out, _ = run_cli(capsys, "verify", "canonical", "--seed", "0")
        assert code == 2
        assert json.loads(out)["pass"] is False

    def test_seed_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("QDEFORM_SEED", "7")
        code, out, _ = run_cli(capsys, "verify", "canonical")
        assert code == 0
        assert json.loads(out)["seed"] == 7

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("QDEFORM_SEED", "7")
        code, out, _ = run_cli(capsys, "verify", "canonical", "--seed", "9")
        assert code == 0
        assert json.loads(out)["seed"] == 9


class TestFig:
    def test_fig2_default_csv(self, capsys):
        code, out, _ = run_cli(capsys, "fig", "fig2")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["curve_id", "scale", "x_raw", "y_raw",
                           "x_rescaled", "y_rescaled", "qlog_y"]
        assert len(rows) == 1 + 3 * 501
        assert "\r" not in out  # LF line endings

    def test_csv_round_trips_qlog_column(self, capsys):
        _, out, _ = run_cli(capsys, "fig", "fig2")
        rows = list(csv.DictReader(io.StringIO(out)))
        for row in rows[::47]:
            scale = float(row["scale"])
            y_rescaled = float(row["y_rescaled"])
            recomputed = q_log(1.3, y_rescaled * scale)
            assert abs(recomputed - float(row["qlog_y"])) <= \
                1e-12 * max(1.0, abs(recomputed))

    def test_fig3_json(self, capsys):
        code, out, _ = run_cli(capsys, "fig", "fig3", "--format", "json",
                               "--grid-points", "11")
        assert code == 0
        payload = json.loads(out)
        assert payload["meta"]["q"] == 1.7
        assert len(payload["rows"]) == 3 * 11

    def test_classical_override_collapses_x_axis(self, capsys):
        code, out, _ = run_cli(capsys, "fig", "fig2", "--q", "1",
                               "--grid-points", "5")
        assert code == 0
        for row in csv.DictReader(io.StringIO(out)):
            assert row["x_raw"] == row["x_rescaled"]

    def test_scale_override(self, capsys):
        code, out, _ = run_cli(capsys, "fig", "fig2", "--scales", "2,5",
                               "--grid-points", "3")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert len(rows) == 1 + 2 * 3

    def test_bad_grid_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "fig", "fig2", "--grid-min", "3",
                               "--grid-max", "1")
        assert code == 1
        assert "grid" in err


class TestCanonicalize:
    def test_hand_case(self, capsys, tmp_path):
        data = tmp_path / "xs.txt"
        data.write_text("0\n1\n")
        code, out, _ = run_cli(capsys, "canonicalize", str(data),
                               "--q", "2", "--c", "0")
        assert code == 0
        payload = json.loads(out)
        assert payload["slope"] == pytest.approx(-1.5, abs=1e-14)
        assert payload["intercept"] == pytest.approx(-0.5, abs=1e-14)
        assert payload["probabilities"] == pytest.approx(
            [2.0 / 3.0, 1.0 / 3.0], rel=1e-14)
        assert payload["c"] == 0.0

    def test_single_line(self, capsys, tmp_path):
        data = tmp_path / "xs.txt"
        data.write_text("1.5\n")
        code, out, _ = run_cli(capsys, "canonicalize", str(data),
                               "--q", "1.5", "--c", "0.5")
        assert code == 0
        assert json.loads(out)["probabilities"] == [1.0]

    def test_classical_ignores_shift(self, capsys, tmp_path):
        data = tmp_path / "xs.txt"
        data.write_text("0\n0.5\n2\n")
        outputs = []
        for c in ("0", "3"):
            code, out, _ = run_cli(capsys, "canonicalize", str(data),
                                   "--q", "1", "--c", c)
            assert code == 0
            outputs.append(json.loads(out))
        assert outputs[0]["probabilities"] == pytest.approx(
            outputs[1]["probabilities"], rel=1e-12)
        assert outputs[0]["slope"] == outputs[1]["slope"]
        assert outputs[0]["intercept"] == pytest.approx(
            outputs[1]["intercept"], rel=1e-12)

    def test_csv_column_and_header_tolerated(self, capsys, tmp_path):
        data = tmp_path / "xs.csv"
        data.write_text("x,weight\n0,9\n1,9\n")
        code, out, _ = run_cli(capsys, "canonicalize", str(data),
                               "--q", "2", "--c", "0")
        assert code == 0
        assert json.loads(out)["count"] == 2

    def test_parse_error_names_line(self, capsys, tmp_path):
        data = tmp_path / "xs.txt"
        data.write_text("0\nnot-a-number\n1\n")
        code, _, err = run_cli(capsys, "canonicalize", str(data),
                               "--q", "2", "--c", "0")
        assert code == 1
        assert ":2:" in err

    def test_missing_file_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "canonicalize", "/nonexistent",
                               "--q", "2", "--c", "0")
        assert code == 1

    def test_domain_failure_exits_one(self, capsys, tmp_path):
        data = tmp_path / "xs.txt"
        data.write_text("-5\n0\n")
        code, _, err = run_cli(capsys, "canonicalize", str(data),
                               "--q", "2", "--c", "0")
        assert code == 1
        assert "constraint" in err


class TestDeterminism:
    def test_verify_byte_identical(self, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            result = subprocess.run(
                [sys.executable, "-m", "qdeform", "verify", "canonical",
                 "--seed", "42", "--format", "json", "--out", str(path)],
                capture_output=True)
            assert result.returncode == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_fig_byte_identical(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path in paths:
            result = subprocess.run(
                [sys.executable, "-m", "qdeform", "fig", "fig3",
                 "--grid-points", "21", "--out", str(path)],
                capture_output=True)
            assert result.returncode == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
