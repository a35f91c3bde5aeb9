"""
Swap local search.

Neighbours of P differ in exactly one facility. A swap is rejected as soon as
one customer reaches an alpha-distance >= f(P); customers are scanned worst
first, sorted once per incumbent.
"""

from __future__ import annotations

from typing import Callable, List, Optional

import numpy as np
import structlog

from ..core.models import Solution
from ..core.objective import alpha_distances, evaluate
from ..instance.models import Instance
from .models import HeuristicError

logger = structlog.get_logger()

_SCAN_BLOCK = 32


def _improves(inst: Instance, cols: np.ndarray, alpha: int, scan: np.ndarray, value: float) -> bool:
    """True when every customer stays strictly below ``value`` under ``cols``."""
    for start in range(0, scan.size, _SCAN_BLOCK):
        block = scan[start: start + _SCAN_BLOCK]
        part = np.partition(inst.d[np.ix_(block, cols)], alpha - 1, axis=1)[:, :alpha].sum(axis=1)
        if np.any(part >= value):
            return False
    return True


def local_search(
    inst: Instance,
    start: Solution,
    alpha: int,
    on_move: Optional[Callable[[Solution], None]] = None,
) -> Solution:
    """
    First-improvement swap search until no swap strictly improves f_alpha.

    ``on_move`` receives the solution after every accepted swap.

    Raises:
        HeuristicError: start with fewer than alpha facilities
    """
    if start.size < alpha:
        raise HeuristicError(f"start solution has {start.size} facilities, need at least alpha={alpha}")
    P: List[int] = list(start.sorted_open())
    value = evaluate(inst, P, alpha).value
    moves = 0
    improved = True
    while improved:
        improved = False
        scan = np.argsort(-alpha_distances(inst, P, alpha), kind="stable")
        outside = [j for j in range(inst.m) if j not in set(P)]
        for pos in range(len(P)):
            for j_new in outside:
                trial = P[:pos] + P[pos + 1:] + [j_new]
                cols = np.asarray(trial, dtype=np.intp)
                if not _improves(inst, cols, alpha, scan, value):
                    continue
                new_value = evaluate(inst, trial, alpha).value
                if not new_value < value:
                    continue
                P, value = sorted(trial), new_value
                moves += 1
                if on_move is not None:
                    on_move(evaluate(inst, P, alpha))
                improved = True
                break
            if improved:
                break

    result = evaluate(inst, P, alpha)
    logger.debug("Local search finished", moves=moves, value=result.value, start_value=start.value)
    return result
