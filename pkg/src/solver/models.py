"""
Solver data types: tree nodes and the run report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from ..core.models import Solution
from ..lp.model import Basis


class SolverError(Exception):
    """Base exception for branch-and-cut errors."""


class SolveStatus(str, Enum):
    OPTIMAL = "Optimal"
    TIME_LIMIT = "TimeLimit"
    INFEASIBLE = "Infeasible"
    ERROR = "Error"


@dataclass(frozen=True, eq=False)
class NodeState:
    """
    One open node of the search tree.

    Attributes:
        y_fixed: Facility -> 0 or 1 for branched facilities
        bound: Lower bound inherited from the parent
        depth: Root is 0
        basis / row_keys: Parent's final LP basis and the pool keys of its rows
    """

    y_fixed: Dict[int, int]
    bound: float
    depth: int = 0
    basis: Optional[Basis] = None
    row_keys: Tuple[int, ...] = ()

    def check(self, p: int, m: int) -> None:
        ones = sum(1 for v in self.y_fixed.values() if v == 1)
        zeros = len(self.y_fixed) - ones
        if ones > p:
            raise SolverError(f"node fixes {ones} facilities open, more than p={p}")
        if zeros > m - p:
            raise SolverError(f"node fixes {zeros} facilities closed, more than m-p={m - p}")

    def is_feasible(self, p: int, m: int) -> bool:
        try:
            self.check(p, m)
        except SolverError:
            return False
        return True


@dataclass(frozen=True)
class RunReport:
    """
    Outcome of one branch-and-cut run.

    Attributes:
        status: Optimal / TimeLimit / Infeasible / Error
        UB: Best objective found (inf when none)
        LB: Certified lower bound
        incumbent: Best solution, if any
        nodes: Processed nodes excluding the root
        root_LB: Bound at the end of root processing
        wall_time_s: Total wall-clock time
        cuts_added: Rows added per cut family
        fixings: x variables fixed to zero
        lp_solves: LP relaxations solved
        root_time_s: Time spent until the root was done
        root_lp_bound: First root LP value, before any separation
    """

    status: SolveStatus
    UB: float
    LB: float
    incumbent: Optional[Solution]
    nodes: int
    root_LB: float
    wall_time_s: float
    cuts_added: Dict[str, int] = field(default_factory=dict)
    fixings: int = 0
    lp_solves: int = 0
    root_time_s: float = 0.0
    root_lp_bound: float = float("nan")
    instance: str = ""
    p: int = 0
    alpha: int = 0
    setting: str = ""
    message: str = ""

    def __post_init__(self) -> None:
        if self.LB > self.UB + 1e-9 * (1.0 + abs(self.UB)):
            raise SolverError(f"report LB {self.LB} exceeds UB {self.UB}")

    @property
    def gap(self) -> float:
        """(UB - LB) / UB, 0 when UB is 0."""
        if self.UB == float("inf"):
            return float("inf")
        if self.UB == 0:
            return 0.0
        return max(0.0, (self.UB - self.LB) / self.UB)

    def cuts(self, family: str) -> int:
        return self.cuts_added.get(family, 0)

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "p": self.p,
            "alpha": self.alpha,
            "setting": self.setting,
            "status": self.status.value,
            "UB": self.UB,
            "LB": self.LB,
            "gap": self.gap,
            "incumbent": self.incumbent.to_dict() if self.incumbent else None,
            "nodes": self.nodes,
            "root_LB": self.root_LB,
            "root_lp_bound": self.root_lp_bound,
            "wall_time_s": self.wall_time_s,
            "root_time_s": self.root_time_s,
            "lp_solves": self.lp_solves,
            "cuts_added": dict(self.cuts_added),
            "fixings": self.fixings,
            "message": self.message,
        }
