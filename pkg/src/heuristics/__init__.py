"""
Heuristics package: greedy starts, swap local search and LP rounding.
"""

from .greedy import greedy_start
from .local_search import local_search
from .models import HeuristicConfig, HeuristicError
from .portfolio import primal_round, run_start_portfolio

__all__ = [
    "HeuristicConfig",
    "HeuristicError",
    "greedy_start",
    "local_search",
    "primal_round",
    "run_start_portfolio",
]
