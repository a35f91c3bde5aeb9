"""
Heuristic configuration.
"""

from __future__ import annotations

from dataclasses import dataclass


class HeuristicError(Exception):
    """Base exception for heuristic errors."""


@dataclass(frozen=True)
class HeuristicConfig:
    """
    Attributes:
        runs: Number of greedy + local search starts
        seed: Root seed; each run draws from its own spawned stream
    """

    runs: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise HeuristicError("runs must be >= 1")
        if self.seed < 0:
            raise HeuristicError("seed must be >= 0")
