"""CLI subcommands, exit codes, and flag handling."""

import json
import shutil

from tasklimits.cli import main
from support import SCENARIO_DIR


class TestRunCommands:
    def test_simulate_passes(self, capsys):
        assert main(["simulate", str(SCENARIO_DIR / "uniform_threshold.json")]) == 0
        out = capsys.readouterr().out
        assert "result: PASS" in out
        assert "telescoping_residual" in out

    def test_predict_passes(self, capsys):
        assert main(["predict", str(SCENARIO_DIR / "bernoulli_pair.json")]) == 0
        out = capsys.readouterr().out
        assert "tv_vs_tail" in out and "result: PASS" in out

    def test_logic_scenario_passes(self, capsys):
        assert main(["logic", str(SCENARIO_DIR / "logic_basics.json")]) == 0
        out = capsys.readouterr().out
        assert out.count("verdict: valid") == 3
        assert out.count("verdict: invalid") == 1

    def test_logic_accepts_bare_formula(self, capsys):
        assert main(["logic", "[]([]p0 -> p0) -> []p0"]) == 0
        assert "verdict: valid" in capsys.readouterr().out

    def test_bad_formula_exits_2(self, capsys):
        assert main(["logic", "[]("]) == 2
        assert "position 3" in capsys.readouterr().err

    def test_missing_scenario_exits_2(self, capsys):
        assert main(["simulate", "/nonexistent/path.json"]) == 2
        assert "error" in capsys.readouterr().err

    def test_negative_tolerance_forces_failure_exit(self, capsys):
        # With tolerance -1 every tight bound fails; exercises the gating path.
        code = main(["predict", str(SCENARIO_DIR / "bernoulli_pair.json"), "--tolerance", "-1"])
        assert code == 1
        assert "result: FAIL" in capsys.readouterr().out


class TestVerify:
    def test_bundled_directory_passes(self, capsys):
        assert main(["verify", str(SCENARIO_DIR)]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 5 and "FAIL" not in out

    def test_failure_is_reflected_in_exit_code(self, tmp_path, capsys):
        shutil.copy(SCENARIO_DIR / "bernoulli_pair.json", tmp_path / "b.json")
        assert main(["verify", str(tmp_path), "--tolerance", "-1"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_empty_directory_is_an_error(self, tmp_path, capsys):
        assert main(["verify", str(tmp_path)]) == 2

    def test_not_a_directory_is_an_error(self, capsys):
        assert main(["verify", str(SCENARIO_DIR / "logic_basics.json")]) == 2


class TestEmit:
    def test_csv_file_is_written(self, tmp_path, capsys):
        out = tmp_path / "report.csv"
        code = main(
            ["emit", str(SCENARIO_DIR / "uniform_threshold.json"), "--format", "csv", "--out", str(out)]
        )
        assert code == 0
        text = out.read_text(encoding="utf-8")
        assert text.startswith("n,utility,delta,tau,bound_lhs,bound_rhs,slack,pass\n")

    def test_structured_file_parses_as_json(self, tmp_path):
        out = tmp_path / "report.json"
        main(["emit", str(SCENARIO_DIR / "logic_basics.json"), "--format", "structured", "--out", str(out)])
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["kind"] == "logic" and data["passed"] is True

    def test_unwritable_destination_exits_2(self, tmp_path, capsys):
        code = main(
            [
                "emit",
                str(SCENARIO_DIR / "uniform_threshold.json"),
                "--format",
                "csv",
                "--out",
                str(tmp_path / "no" / "such" / "dir.csv"),
            ]
        )
        assert code == 2
        assert "cannot write" in capsys.readouterr().err


class TestFlagOverrides:
    def test_n_max_override_shortens_the_run(self, capsys):
        assert main(["simulate", str(SCENARIO_DIR / "uniform_threshold.json"), "--n-max", "2"]) == 0
        out = capsys.readouterr().out
        assert "n=2" in out and "n=3" not in out

    def test_seed_override_changes_coverage_path(self, tmp_path, capsys):
        target = str(SCENARIO_DIR / "random_coverage.json")
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        main(["emit", target, "--format", "structured", "--out", str(out_a), "--seed", "1"])
        main(["emit", target, "--format", "structured", "--out", str(out_b), "--seed", "2"])
        assert out_a.read_bytes() != out_b.read_bytes()
