from .logging import configure_logging, level_from_verbosity
from .metrics import MetricsRegistry, Stopwatch

__all__ = [
    "MetricsRegistry",
    "Stopwatch",
    "configure_logging",
    "level_from_verbosity",
]
