"""Tests for JSON export."""
import json

from nicholsbench.core.verifier import CheckReport, SubCheck
from nicholsbench.utils.export import (
    hilbert_table_json,
    load_report,
    save_batch_reports,
    save_hilbert_table,
    save_json,
    save_report,
    to_json,
)


def report(target="SuperA3-J2", check="pbw", passed=True):
    return CheckReport(check, target, [SubCheck("basis", passed)], details={"degree": 3})


class TestExport:
    """Test the export helpers."""

    def test_to_json_deterministic(self):
        """Test sorted keys and two-space indent."""
        assert to_json({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}'

    def test_save_json_creates_directories(self, tmp_path):
        """Test that parent directories are created."""
        path = tmp_path / "nested" / "out.json"
        save_json({"x": 1}, path)
        assert json.loads(path.read_text()) == {"x": 1}

    def test_report_round_trip(self, tmp_path):
        """Test saving and loading a report."""
        path = tmp_path / "report.json"
        save_report(report(), path)
        data = load_report(path)
        assert data["status"] == "pass"
        assert data["details"]["degree"] == 3

    def test_hilbert_table(self, tmp_path):
        """Test the {degree, dim} records."""
        table = {(0, 0): 1, (1, 0): 1, (1, 1): 2}
        assert hilbert_table_json(table)[2] == {"degree": [1, 1], "dim": 2}
        path = tmp_path / "table.json"
        save_hilbert_table(table, path, "a2")
        data = load_report(path)
        assert data["name"] == "a2"
        assert len(data["table"]) == 3

    def test_batch(self, tmp_path):
        """Test per-report files and the summary."""
        reports = [report(), report("D21a-4.1", "hilbert", False)]
        summary_path = save_batch_reports(reports, tmp_path, "run")
        summary = load_report(summary_path)
        assert summary["num_reports"] == 2
        assert summary["aggregate_pass_rate"] == 0.5
        assert summary["statuses"][1] == {"check": "hilbert", "target": "D21a-4.1", "status": "fail"}
        files = sorted(p.name for p in tmp_path.iterdir() if "summary" not in p.name)
        assert files[0].startswith("run_0_SuperA3-J2_pbw_")
        assert files[1].startswith("run_1_D21a-4.1_hilbert_")

    def test_target_sanitized(self, tmp_path):
        """Test that targets with brackets become safe file names."""
        save_batch_reports([report("beta=[1, 1]", "obstruction")], tmp_path)
        names = [p.name for p in tmp_path.iterdir() if "summary" not in p.name]
        assert names[0].startswith("batch_reports_0_beta_1_1_")
