"""JSON export of reports and Hilbert tables."""
import json
import re
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Union

from nicholsbench.core.braiding import MultiDegree
from nicholsbench.core.verifier import CheckReport


def to_json(data: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent."""
    return json.dumps(data, indent=2, sort_keys=True)


def save_json(data: Any, output_path: Union[str, Path]):
    """Write data as deterministic JSON, creating parent directories."""
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8") as f:
        f.write(to_json(data) + "\n")


def save_report(report: CheckReport, output_path: Union[str, Path]):
    """Save one check report to a JSON file."""
    save_json(report.to_dict(), output_path)


def hilbert_table_json(table: Dict[MultiDegree, int]) -> List[Dict[str, Any]]:
    return [{"degree": list(degree), "dim": value} for degree, value in table.items()]


def save_hilbert_table(
    table: Dict[MultiDegree, int],
    output_path: Union[str, Path],
    name: str = "presentation",
):
    """Save a Hilbert table as a list of {degree, dim} records.

    Args:
        table: Dimensions keyed by multidegree
        output_path: Path to save the table
        name: Presentation name stored alongside the table
    """
    save_json({"name": name, "table": hilbert_table_json(table)}, output_path)


def save_batch_reports(
    reports: List[CheckReport],
    output_dir: Union[str, Path],
    filename_prefix: str = "batch_reports",
) -> Path:
    """Save reports individually plus a summary file.

    Returns:
        Path of the summary file
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")

    for i, report in enumerate(reports):
        target = re.sub(r"[^A-Za-z0-9._-]+", "_", report.target)
        filename = f"{filename_prefix}_{i}_{target}_{report.check}_{timestamp}.json"
        save_report(report, output_dir / filename)

    passed = sum(1 for report in reports if report.passed)
    summary = {
        "timestamp": timestamp,
        "num_reports": len(reports),
        "statuses": [
            {"check": r.check, "target": r.target, "status": r.status} for r in reports
        ],
        "aggregate_pass_rate": passed / len(reports) if reports else 0.0,
    }
    summary_path = output_dir / f"{filename_prefix}_summary_{timestamp}.json"
    save_json(summary, summary_path)
    return summary_path


def load_report(input_path: Union[str, Path]) -> dict:
    """Load a saved report as a dictionary."""
    with open(input_path, "r", encoding="utf-8") as f:
        return json.load(f)
