"""
Start portfolio and LP rounding.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
import structlog

from ..core.models import Solution
from ..core.objective import evaluate
from ..instance.models import Instance
from .greedy import greedy_start
from .local_search import local_search
from .models import HeuristicConfig, HeuristicError

logger = structlog.get_logger()


def run_start_portfolio(inst: Instance, p: int, alpha: int, config: Optional[HeuristicConfig] = None) -> Solution:
    """
    Best of ``config.runs`` greedy starts, each improved by local search.

    Run k uses the k-th stream spawned from ``config.seed``; the best result is
    chosen by value, then lexicographically smallest open set.
    """
    config = config or HeuristicConfig()
    best: Optional[Solution] = None
    for run, child in enumerate(np.random.SeedSequence(config.seed).spawn(config.runs)):
        candidate = local_search(inst, greedy_start(inst, p, alpha, child), alpha)
        if best is None or candidate.sort_key() < best.sort_key():
            best = candidate
            logger.debug("Portfolio improved", run=run, value=candidate.value)
    assert best is not None
    logger.info("Start heuristics finished", runs=config.runs, value=best.value, open=best.sorted_open())
    return best


def primal_round(inst: Instance, y_star: np.ndarray, p: int, alpha: int) -> Solution:
    """Open the p largest y*_j, ties by lowest index."""
    y = np.asarray(y_star, dtype=np.float64)
    if y.shape != (inst.m,):
        raise HeuristicError(f"y* must have {inst.m} entries, got shape {y.shape}")
    chosen = np.argsort(-y, kind="stable")[:p]
    return evaluate(inst, chosen, alpha)
