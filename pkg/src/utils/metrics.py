"""
Solver counters and a deadline stopwatch.
"""

from __future__ import annotations

import time
from collections import defaultdict
from threading import Lock
from typing import Dict, Optional


class MetricsRegistry:
    """
    In-memory counters and running maxima for one solve.
    """

    def __init__(self) -> None:
        self._counters: Dict[str, int] = defaultdict(int)
        self._peaks: Dict[str, float] = {}
        self._lock = Lock()

    def increment(self, name: str, value: int = 1) -> None:
        with self._lock:
            self._counters[name] += value

    def counter(self, name: str) -> int:
        with self._lock:
            return self._counters.get(name, 0)

    def observe_max(self, name: str, value: float) -> None:
        with self._lock:
            if value > self._peaks.get(name, float("-inf")):
                self._peaks[name] = value

    def peak(self, name: str, default: float = 0.0) -> float:
        with self._lock:
            return self._peaks.get(name, default)

    def snapshot(self) -> Dict[str, float]:
        """Counters and peaks flattened into one mapping."""
        with self._lock:
            merged: Dict[str, float] = dict(self._counters)
            merged.update({f"max_{k}": v for k, v in self._peaks.items()})
            return merged


class Stopwatch:
    """Wall-clock timer with an optional deadline."""

    def __init__(self, limit_s: Optional[float] = None) -> None:
        self._start = time.perf_counter()
        self._limit_s = limit_s

    def elapsed(self) -> float:
        return time.perf_counter() - self._start

    def remaining(self) -> float:
        if self._limit_s is None:
            return float("inf")
        return self._limit_s - self.elapsed()

    def expired(self) -> bool:
        return self.remaining() <= 0.0
