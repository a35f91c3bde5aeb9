"""
Alpha-distance arithmetic and objective evaluation.

All functions take 0-based customer / facility indices and are pure over an
immutable Instance.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, List, Optional

import numpy as np
import structlog

from ..config import settings
from ..instance.models import Instance
from .models import BudgetExceededError, CoreError, Solution, as_facility_tuple

logger = structlog.get_logger()

# Values closer than this are the same alpha-distance.
DISTANCE_TOL = 1e-9


def _facility_array(inst: Instance, P: Iterable[int], alpha: int) -> np.ndarray:
    cols = np.asarray(as_facility_tuple(P), dtype=np.intp)
    if alpha < 1:
        raise CoreError("alpha must be >= 1")
    if cols.size < alpha:
        raise CoreError(f"need at least alpha={alpha} open facilities, got {cols.size}")
    if cols[0] < 0 or cols[-1] >= inst.m:
        raise CoreError("facility index out of range")
    return cols


def alpha_distance(inst: Instance, P: Iterable[int], i: int, alpha: int) -> float:
    """Sum of the alpha smallest distances from customer i to facilities in P."""
    cols = _facility_array(inst, P, alpha)
    row = np.sort(inst.d[i, cols])
    return float(row[:alpha].sum())


def alpha_distances(inst: Instance, P: Iterable[int], alpha: int) -> np.ndarray:
    """d_alpha(P, i) for every customer i, as a vector of length n."""
    cols = _facility_array(inst, P, alpha)
    block = np.sort(inst.d[:, cols], axis=1)
    return block[:, :alpha].sum(axis=1)


def objective(inst: Instance, P: Iterable[int], alpha: int) -> float:
    """f_alpha(P): the largest alpha-distance over all customers."""
    return float(alpha_distances(inst, P, alpha).max())


def alpha_closest_set(inst: Instance, P: Iterable[int], i: int, alpha: int) -> frozenset:
    """
    The alpha facilities of P closest to customer i.

    Ties are broken by lowest facility index.
    """
    cols = _facility_array(inst, P, alpha)
    # lexsort: last key is primary
    order = np.lexsort((cols, inst.d[i, cols]))
    return frozenset(int(cols[k]) for k in order[:alpha])


def evaluate(inst: Instance, P: Iterable[int], alpha: int) -> Solution:
    """Build a Solution with its objective recomputed from scratch."""
    open_set = frozenset(as_facility_tuple(P))
    return Solution(open=open_set, value=objective(inst, open_set, alpha))


def check_subset_budget(m: int, alpha: int, budget: Optional[int] = None, what: str = "alpha-subsets") -> int:
    """Return C(m, alpha), raising BudgetExceededError above the budget."""
    limit = settings.max_subsets if budget is None else budget
    count = comb(m, alpha)
    if count > limit:
        raise BudgetExceededError(
            f"{what}: C({m}, {alpha}) = {count} exceeds the budget of {limit}; "
            "use a smaller alpha or raise PACCP_MAX_SUBSETS"
        )
    return count


def subset_array(m: int, alpha: int) -> np.ndarray:
    """All alpha-subsets of range(m) in lexicographic order, shape (C, alpha)."""
    count = comb(m, alpha)
    if count == 0:
        return np.empty((0, alpha), dtype=np.intp)
    return np.fromiter(
        (j for subset in combinations(range(m), alpha) for j in subset),
        dtype=np.intp,
        count=count * alpha,
    ).reshape(count, alpha)


def dedupe_sorted(values: np.ndarray, tol: float = DISTANCE_TOL) -> List[float]:
    """Collapse a sorted array into strictly increasing values spaced > tol."""
    result: List[float] = []
    for v in values:
        if not result or v - result[-1] > tol:
            result.append(float(v))
    return result


def enumerate_alpha_distances(inst: Instance, alpha: int, budget: Optional[int] = None) -> List[float]:
    """
    D^alpha: every attainable value d_iA, sorted and deduplicated.

    Raises:
        BudgetExceededError: C(m, alpha) above the enumeration budget
    """
    if alpha < 1 or alpha > inst.m:
        raise CoreError(f"alpha must be in [1, m={inst.m}]")
    check_subset_budget(inst.m, alpha, budget, what="D^alpha enumeration")
    subsets = subset_array(inst.m, alpha)
    values = inst.d[:, subsets].sum(axis=2).ravel()
    values.sort()
    result = dedupe_sorted(values)
    logger.debug("Enumerated alpha-distances", alpha=alpha, subsets=len(subsets), distinct=len(result))
    return result
