"""
Greedy starting heuristic.

Grow P one facility at a time toward the customer that is currently served
worst, measured by its alpha'-distance with alpha' = min{alpha, |P|}.
"""

from __future__ import annotations

from typing import List, Optional, Union

import numpy as np
import structlog

from ..core.models import Solution
from ..core.objective import DISTANCE_TOL, alpha_distances, evaluate
from ..instance.models import Instance
from .models import HeuristicError

logger = structlog.get_logger()

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


def greedy_start(
    inst: Instance,
    p: int,
    alpha: int,
    seed: SeedLike = 0,
    start: Optional[int] = None,
) -> Solution:
    """
    Build a feasible p-set.

    Args:
        seed: Seed, seed sequence or generator for the random choices
        start: First facility; drawn at random when None

    Raises:
        HeuristicError: unless 1 <= alpha <= p < m
    """
    if not 1 <= alpha <= p < inst.m:
        raise HeuristicError(f"need 1 <= alpha <= p < m, got alpha={alpha}, p={p}, m={inst.m}")
    rng = np.random.default_rng(seed)
    first = int(rng.integers(inst.m)) if start is None else int(start)
    P: List[int] = [first]
    in_P = np.zeros(inst.m, dtype=bool)
    in_P[first] = True

    while len(P) < p:
        a = min(alpha, len(P))
        if inst.same_locations:
            customers = np.flatnonzero(~in_P)
        else:
            customers = np.arange(inst.n)
        values = alpha_distances(inst, P, a)[customers]
        worst = customers[values >= values.max() - DISTANCE_TOL]
        target = int(rng.choice(worst))
        if inst.same_locations:
            chosen = target
        else:
            free = np.flatnonzero(~in_P)
            chosen = int(free[np.argmin(inst.d[target, free])])
        P.append(chosen)
        in_P[chosen] = True

    solution = evaluate(inst, P, alpha)
    logger.debug("Greedy start", open=solution.sorted_open(), value=solution.value)
    return solution
