"""
Variable fixings x_ij = 0 that keep at least one optimal solution.

- Remoteness: each customer never needs its p - alpha farthest facilities.
- Upper bound: no alpha-subset containing j is within UB of customer i.
"""

from __future__ import annotations

from typing import Iterable, List, Tuple

import numpy as np
import structlog

from ..formulations.var_map import VarMap
from ..instance.models import Instance
from ..lp.model import Relation
from .models import CutFamily, CutRow, exceed_threshold

logger = structlog.get_logger()

Pair = Tuple[int, int]


def remoteness_fixings(inst: Instance, p: int, alpha: int) -> List[Pair]:
    """
    For each customer the p - alpha facilities of largest distance.

    Ties are taken by largest distance first, then smallest facility id, so
    exactly one set is fixed per customer.
    """
    k = p - alpha
    if k <= 0:
        return []
    k = min(k, inst.m)
    pairs: List[Pair] = []
    ids = np.arange(inst.m)
    for i in range(inst.n):
        # primary key -d (farthest first), secondary key id
        order = np.lexsort((ids, -inst.d[i]))
        pairs.extend((i, int(j)) for j in order[:k])
    return pairs


def min_subset_through(inst: Instance, alpha: int) -> np.ndarray:
    """
    min over alpha-subsets A ∋ j of d_iA, for every (i, j), shape (n, m).

    Equals d_ij plus the alpha - 1 smallest distances from i to J \\ {j}.
    """
    n, m = inst.n, inst.m
    if alpha == 1:
        return inst.d.copy()
    order = np.argsort(inst.d, axis=1, kind="stable")
    sorted_d = np.take_along_axis(inst.d, order, axis=1)
    head = sorted_d[:, : alpha - 1].sum(axis=1)
    head_plus = sorted_d[:, :alpha].sum(axis=1)
    rank = np.empty_like(order)
    rank[np.arange(n)[:, None], order] = np.arange(m)[None, :]
    # j among the alpha-1 nearest: replace it by the alpha-th nearest
    others = np.where(rank < alpha - 1, head_plus[:, None] - inst.d, head[:, None])
    return inst.d + others


def upper_bound_fixings(inst: Instance, alpha: int, UB: float) -> List[Pair]:
    """(i, j) such that every alpha-subset through j costs more than UB for i."""
    if not np.isfinite(UB):
        return []
    best = min_subset_through(inst, alpha)
    rows, cols = np.nonzero(best > exceed_threshold(UB))
    pairs = [(int(i), int(j)) for i, j in zip(rows, cols)]
    logger.debug("Upper bound fixings", ub=UB, alpha=alpha, fixed=len(pairs))
    return pairs


def fixing_rows(pairs: Iterable[Pair], vm: VarMap) -> List[CutRow]:
    """x_ij <= 0 rows for F1-space fixings."""
    return [
        CutRow(
            family=CutFamily.FIXING,
            indices=(vm.x_index(i, j),),
            coefs=(1.0,),
            relation=Relation.LE,
            rhs=0.0,
            origin_customer=i,
        )
        for i, j in pairs
    ]
