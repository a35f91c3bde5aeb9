"""
Exhaustive oracles over all p-subsets of facilities.

These are correctness references for small instances only; every entry point
is guarded by an explicit budget.
"""

from __future__ import annotations

from itertools import combinations, islice
from math import comb
from typing import Iterator, List, Optional, Tuple

import numpy as np
import structlog

from ..config import settings
from ..instance.models import Instance
from .models import BudgetExceededError, CoreError, Solution, VariantKind
from .variants import variant_value

logger = structlog.get_logger()

_BATCH = 4096


def _check_budget(inst: Instance, p: int, max_subsets: Optional[int]) -> int:
    if not 1 <= p <= inst.m:
        raise CoreError(f"p must be in [1, m={inst.m}]")
    if inst.m > settings.brute_force_max_facilities:
        raise BudgetExceededError(
            f"brute force limited to m <= {settings.brute_force_max_facilities} facilities, got m={inst.m}"
        )
    count = comb(inst.m, p)
    if max_subsets is not None and count > max_subsets:
        raise BudgetExceededError(f"C({inst.m}, {p}) = {count} exceeds --max-subsets {max_subsets}")
    return count


def _batches(m: int, p: int) -> Iterator[np.ndarray]:
    it = combinations(range(m), p)
    while True:
        chunk = list(islice(it, _BATCH))
        if not chunk:
            return
        yield np.asarray(chunk, dtype=np.intp)


def brute_force_opt(
    inst: Instance,
    p: int,
    alpha: int,
    max_subsets: Optional[int] = None,
) -> Tuple[float, Solution]:
    """
    Global optimum of the pαCCP by enumeration.

    Returns the optimal value and the lexicographically smallest optimal set.
    """
    if alpha < 1 or alpha > p:
        raise CoreError(f"alpha must be in [1, p={p}]")
    count = _check_budget(inst, p, max_subsets)

    best_value = np.inf
    best_set: Tuple[int, ...] = ()
    for batch in _batches(inst.m, p):
        # (n, batch, p) distances, alpha smallest per customer and subset
        block = np.sort(inst.d[:, batch], axis=2)[:, :, :alpha].sum(axis=2)
        values = block.max(axis=0)
        k = int(np.argmin(values))  # first minimum = lexicographically smallest
        if values[k] < best_value:
            best_value = float(values[k])
            best_set = tuple(int(j) for j in batch[k])

    logger.debug("Brute force finished", subsets=count, p=p, alpha=alpha, value=best_value)
    return best_value, Solution(open=frozenset(best_set), value=best_value)


def all_optimal_sets(
    inst: Instance,
    p: int,
    alpha: int,
    tol: float = 1e-9,
    max_subsets: Optional[int] = None,
) -> List[Tuple[int, ...]]:
    """Every p-set attaining the optimum (within tol), in lexicographic order."""
    best_value, _ = brute_force_opt(inst, p, alpha, max_subsets)
    optima: List[Tuple[int, ...]] = []
    for batch in _batches(inst.m, p):
        block = np.sort(inst.d[:, batch], axis=2)[:, :, :alpha].sum(axis=2)
        values = block.max(axis=0)
        for k in np.flatnonzero(values <= best_value + tol):
            optima.append(tuple(int(j) for j in batch[k]))
    return optima


def brute_force_variant_opt(
    inst: Instance,
    p: int,
    kind: VariantKind,
    max_subsets: Optional[int] = None,
) -> float:
    """Optimal value of a p-center variant by enumeration."""
    _check_budget(inst, p, max_subsets)
    return min(variant_value(inst, P, kind) for P in combinations(range(inst.m), p))
