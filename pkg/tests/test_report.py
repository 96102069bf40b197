"""Report emission: CSV schema golden test and lossless structured round-trip."""

import pytest

from tasklimits.errors import ConfigurationError
from tasklimits.report import (
    CSV_COLUMNS,
    Report,
    StepRecord,
    emit_report,
    report_from_json,
)
from tasklimits.runner import run_experiment
from tasklimits.scenario import parse_scenario
from support import SCENARIO_DIR


class TestCsv:
    def test_header_only_for_empty_steps(self):
        report = Report(scenario="empty", kind="trajectory", passed=True)
        assert emit_report(report, "csv") == b"n,utility,delta,tau,bound_lhs,bound_rhs,slack,pass\n"

    def test_column_schema_is_pinned(self):
        assert CSV_COLUMNS == ("n", "utility", "delta", "tau", "bound_lhs", "bound_rhs", "slack", "pass")

    def test_trajectory_rows_put_delta_on_the_leading_level(self):
        scenario = parse_scenario(SCENARIO_DIR / "uniform_threshold.json")
        payload = emit_report(run_experiment(scenario), "csv").decode("utf-8")
        expected = (
            "n,utility,delta,tau,bound_lhs,bound_rhs,slack,pass\n"
            "1,0.2,0.2,,,,,\n"
            "2,0.4,0.2,,,,,\n"
            "3,0.6000000000000001,0.2,,,,,\n"
            "4,0.8,0.2,,,,,\n"
            "5,1.0,,,,,,\n"
        )
        assert payload == expected

    def test_five_step_trajectory_has_five_data_rows(self):
        scenario = parse_scenario(SCENARIO_DIR / "uniform_threshold.json")
        lines = emit_report(run_experiment(scenario), "csv").decode().strip().split("\n")
        assert len(lines) == 6  # header + 5 rows
        # Last row's delta cell is empty.
        assert lines[-1].split(",")[2] == ""

    def test_booleans_render_lowercase(self):
        report = Report(
            scenario="b",
            kind="prediction",
            passed=True,
            steps=(StepRecord(n=0, passed=True), StepRecord(n=1, passed=False)),
        )
        lines = emit_report(report, "csv").decode().strip().split("\n")
        assert lines[1].endswith("true")
        assert lines[2].endswith("false")

    def test_unknown_format_rejected(self):
        report = Report(scenario="x", kind="logic", passed=True)
        with pytest.raises(ConfigurationError):
            emit_report(report, "yaml")


class TestStructuredRoundTrip:
    @pytest.mark.parametrize(
        "name",
        [
            "uniform_threshold.json",
            "geometric_difficulty.json",
            "random_coverage.json",
            "bernoulli_pair.json",
            "logic_basics.json",
        ],
    )
    def test_bundled_scenarios_round_trip_losslessly(self, name):
        report = run_experiment(parse_scenario(SCENARIO_DIR / name))
        payload = emit_report(report, "structured")
        assert report_from_json(payload) == report

    def test_emission_is_deterministic(self):
        scenario = parse_scenario(SCENARIO_DIR / "bernoulli_pair.json")
        first = emit_report(run_experiment(scenario), "structured")
        second = emit_report(run_experiment(scenario), "structured")
        assert first == second
