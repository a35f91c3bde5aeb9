"""
Branch-and-cut configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Any, Optional

from ..config import Settings, settings as default_settings
from .models import SolverError


class Setting(str, Enum):
    """
    Feature levels of the solver.

    1     plain (F1) with every linking row
    1H    + start heuristics, LP rounding and fixings
    1HS   + linking rows separated instead of added up front
    1HSL  + upper-bound rows and lifted rows
    """

    S1 = "1"
    S1H = "1H"
    S1HS = "1HS"
    S1HSL = "1HSL"

    @property
    def heuristics(self) -> bool:
        return self is not Setting.S1

    @property
    def separate_linking(self) -> bool:
        return self in (Setting.S1HS, Setting.S1HSL)

    @property
    def lifting(self) -> bool:
        return self is Setting.S1HSL


@dataclass(frozen=True)
class BncConfig:
    """
    Attributes:
        num_start_heur_runs: Greedy + local search starts before the root
        num_initial_cuts: Linking rows per customer added up front (separation mode)
        max_num_sep_root: Separation rounds at the root
        max_no_improvements: Rounds without bound gain before tailing off
        improvement_threshold: Minimum bound gain that counts as progress
        max_num_cuts_tree: Rows added per round outside the root
        max_num_sep_tree: Separation rounds per non-root node
        num_lifted_customers: Customers tried for lifted rows per round
        time_limit_s: Wall-clock limit
        seed: Seed for heuristics and separation order
        setting: Feature level
    """

    num_start_heur_runs: int = 10
    num_initial_cuts: int = 100
    max_num_sep_root: int = 150
    max_no_improvements: int = 5
    improvement_threshold: float = 1e-4
    max_num_cuts_tree: int = 50
    max_num_sep_tree: int = 5
    num_lifted_customers: int = 20
    time_limit_s: float = 1800.0
    seed: int = 0
    setting: Setting = Setting.S1HSL

    def __post_init__(self) -> None:
        if isinstance(self.setting, str) and not isinstance(self.setting, Setting):
            try:
                object.__setattr__(self, "setting", Setting(self.setting))
            except ValueError:
                raise SolverError(f"unknown setting {self.setting!r}") from None
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, (int, float)) and not isinstance(value, bool) and value < 0:
                raise SolverError(f"{f.name} must be >= 0")
        if self.num_start_heur_runs < 1 and self.setting.heuristics:
            raise SolverError("num_start_heur_runs must be >= 1 when heuristics are enabled")
        if self.time_limit_s <= 0:
            raise SolverError("time_limit_s must be > 0")

    @classmethod
    def from_settings(cls, source: Optional[Settings] = None, **overrides: Any) -> "BncConfig":
        """Defaults from process settings; explicit (non-None) overrides win."""
        src = source or default_settings
        base = cls(seed=src.seed, time_limit_s=src.time_limit_s)
        chosen = {k: v for k, v in overrides.items() if v is not None}
        return replace(base, **chosen) if chosen else base
