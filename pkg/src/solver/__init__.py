"""
Solver package: branch-and-cut over the assignment formulation.
"""

from .branch_and_cut import BranchAndCut, branch_select, evaluate_leaf, solve
from .config import BncConfig, Setting
from .cut_pool import CutPool
from .models import NodeState, RunReport, SolverError, SolveStatus
from .separation import SeparationResult, SeparationState, push_lower_bound, round_up_bound, separation_round

__all__ = [
    "BncConfig",
    "BranchAndCut",
    "CutPool",
    "NodeState",
    "RunReport",
    "SeparationResult",
    "SeparationState",
    "Setting",
    "SolveStatus",
    "SolverError",
    "branch_select",
    "evaluate_leaf",
    "push_lower_bound",
    "round_up_bound",
    "separation_round",
    "solve",
]
