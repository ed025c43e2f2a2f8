"""Batch execution of verification jobs."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence

from nicholsbench.catalog.entry import CatalogEntry
from nicholsbench.core.verifier import CheckReport, Verifier

logger = logging.getLogger(__name__)


@dataclass
class VerificationJob:
    """An entry with the checks to run on it."""

    entry: CatalogEntry
    checks: Optional[Sequence[str]] = None
    degree: Optional[int] = None


@dataclass
class VerificationBatch:
    """Reports of a batch, in submission order."""

    reports: List[CheckReport] = field(default_factory=list)
    started_at: datetime = field(default_factory=datetime.now)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(report.passed for report in self.reports)

    def calculate_pass_rate(self) -> float:
        if not self.reports:
            return 0.0
        return sum(1 for report in self.reports if report.passed) / len(self.reports)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "reports": [report.to_dict() for report in self.reports],
            "all_passed": self.all_passed,
            "pass_rate": self.calculate_pass_rate(),
            "metadata": self.metadata,
        }


class VerificationRunner:
    """Runs jobs through a Verifier, sequentially or on a thread pool.

    Reports come back in the order the jobs were submitted whatever the
    number of workers.
    """

    def __init__(self, verifier: Optional[Verifier] = None, workers: int = 1):
        """Initialize the runner.

        Args:
            verifier: Verifier to use (a default one if omitted)
            workers: Number of worker threads; 1 runs inline
        """
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.verifier = verifier or Verifier()
        self.workers = workers

    def _run_job(self, job: VerificationJob) -> List[CheckReport]:
        logger.info("Verifying %s", job.entry.tag)
        reports = self.verifier.verify(job.entry, job.checks, job.degree)
        for report in reports:
            logger.info("  %s: %s", report.check, report.status)
        return reports

    def run(self, jobs: Sequence[VerificationJob]) -> VerificationBatch:
        """Run every job and collect the reports.

        Args:
            jobs: Jobs to execute

        Returns:
            VerificationBatch with the reports in submission order
        """
        batch = VerificationBatch(metadata={"jobs": len(jobs), "workers": self.workers})
        if self.workers == 1 or len(jobs) <= 1:
            results = [self._run_job(job) for job in jobs]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(self._run_job, jobs))
        for reports in results:
            batch.reports.extend(reports)
        logger.info(
            "Verified %d jobs: %d reports, pass rate %.2f",
            len(jobs),
            len(batch.reports),
            batch.calculate_pass_rate(),
        )
        return batch

    def run_entries(
        self,
        entries: Sequence[CatalogEntry],
        checks: Optional[Sequence[str]] = None,
        degree: Optional[int] = None,
    ) -> VerificationBatch:
        return self.run([VerificationJob(entry, checks, degree) for entry in entries])
