"""
Tests for logging configuration helpers, solver counters and the stopwatch.

Run with: pytest tests/test_utils.py -v
"""

import logging

import pytest

from src.utils import MetricsRegistry, Stopwatch, configure_logging, level_from_verbosity


class TestVerbosity:
    @pytest.mark.parametrize(
        "name, level",
        [("quiet", "WARNING"), ("info", "INFO"), ("DEBUG", "DEBUG"), ("error", "ERROR"), ("", "INFO"), ("loud", "INFO")],
    )
    def test_levels(self, name, level):
        assert level_from_verbosity(name) == level

    def test_configure_writes_log_file(self, tmp_path):
        log_file = tmp_path / "logs" / "solver.log"
        configure_logging("quiet", log_file=str(log_file))
        assert logging.getLogger().level == logging.WARNING
        assert log_file.exists()
        configure_logging("info")


class TestMetrics:
    def test_counters_and_peaks(self):
        metrics = MetricsRegistry()
        metrics.increment("lp_solves")
        metrics.increment("lp_solves", 2)
        metrics.observe_max("depth", 3)
        metrics.observe_max("depth", 1)
        assert metrics.counter("lp_solves") == 3
        assert metrics.counter("incumbents") == 0
        assert metrics.peak("depth") == 3
        assert metrics.snapshot() == {"lp_solves": 3, "max_depth": 3}

    def test_stopwatch(self):
        assert not Stopwatch().expired()
        assert Stopwatch().remaining() == float("inf")
        assert Stopwatch(0.0).expired()
        assert 0.0 < Stopwatch(3600.0).remaining() <= 3600.0
