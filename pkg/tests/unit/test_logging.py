"""Tests for logger setup."""
import logging

import pytest

from nicholsbench.utils.logging import setup_logger


class TestSetupLogger:
    """Test setup_logger."""

    def test_level_name(self):
        """Test that level names are accepted in any case."""
        logger = setup_logger("nicholsbench.test.name", "debug")
        assert logger.level == logging.DEBUG

    def test_unknown_level(self):
        """Test that an unknown level name raises."""
        with pytest.raises(ValueError):
            setup_logger("nicholsbench.test.unknown", "LOUD")

    def test_no_duplicate_handlers(self):
        """Test that repeated setup updates levels instead of adding handlers."""
        first = setup_logger("nicholsbench.test.repeat", logging.INFO)
        count = len(first.handlers)
        second = setup_logger("nicholsbench.test.repeat", logging.WARNING)
        assert second is first
        assert len(second.handlers) == count
        assert all(h.level == logging.WARNING for h in second.handlers)

    def test_log_file(self, tmp_path):
        """Test that records reach the log file."""
        path = tmp_path / "run.log"
        logger = setup_logger("nicholsbench.test.file", logging.INFO, str(path))
        logger.info("component built")
        for handler in logger.handlers:
            handler.flush()
        assert "component built" in path.read_text()
