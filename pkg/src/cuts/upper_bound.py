"""
Upper-bound inequalities in the (F1) space.

A set C of facilities for customer i with the property that every alpha-subset
sharing at least beta facilities with C costs more than UB yields

    sum_{j in C} x_ij <= beta - 1.

Simple rows use C = {j : d_ij > UB / beta}; general rows grow C greedily from
the fractional point.
"""

from __future__ import annotations

from itertools import combinations
from typing import List, Optional

import numpy as np
import structlog

from ..formulations.var_map import VarMap
from ..instance.models import Instance
from ..lp.model import Relation
from .models import VIOLATION_TOL, CutFamily, CutRow, exceed_threshold

logger = structlog.get_logger()


def _ub_row(vm: VarMap, family: CutFamily, i: int, facilities: List[int], beta: int) -> CutRow:
    return CutRow.from_dict(
        family,
        {vm.x_index(i, j): 1.0 for j in facilities},
        Relation.LE,
        float(beta - 1),
        origin_customer=i,
    )


def simple_ub_rows(inst: Instance, alpha: int, UB: float, vm: VarMap) -> List[CutRow]:
    """
    Rows sum_{j in C_i^beta} x_ij <= beta - 1 for beta = 2..alpha.

    beta = 1 is left to the upper-bound fixings.
    """
    if not np.isfinite(UB):
        return []
    rows: List[CutRow] = []
    for i in range(inst.n):
        for beta in range(2, alpha + 1):
            C = np.flatnonzero(inst.d[i] > exceed_threshold(UB / beta))
            if C.size:
                rows.append(_ub_row(vm, CutFamily.SIMPLE_UB, i, [int(j) for j in C], beta))
    return rows


def _cheapest_completion(sorted_row: np.ndarray, order: np.ndarray, B: tuple, count: int) -> float:
    """Sum of the ``count`` smallest distances over facilities outside B."""
    if count <= 0:
        return 0.0
    total = 0.0
    taken = 0
    for pos in range(len(order)):
        if int(order[pos]) in B:
            continue
        total += float(sorted_row[pos])
        taken += 1
        if taken == count:
            break
    return total


def general_ub_rows(
    inst: Instance,
    alpha: int,
    UB: float,
    x_star: np.ndarray,
    max_rows: Optional[int],
    vm: VarMap,
    skip_customers: Optional[set] = None,
) -> List[CutRow]:
    """
    Separate general upper-bound rows at a fractional point.

    Args:
        x_star: Fractional assignment, shape (n, m)
        max_rows: Cap on returned rows (None for no cap)
        skip_customers: Customers that already received a row this round

    Candidates are grown per customer and beta by scanning facilities in
    descending x*_ij (ties by id); j joins C when every beta-subset of C ∪ {j}
    through j has minimum completion cost above UB. At most one row per customer.
    """
    if not np.isfinite(UB) or alpha < 2:
        return []
    threshold = exceed_threshold(UB)
    skip = skip_customers or set()
    rows: List[CutRow] = []
    ids = np.arange(inst.m)
    for i in range(inst.n):
        if i in skip:
            continue
        if max_rows is not None and len(rows) >= max_rows:
            break
        xi = x_star[i]
        scan = [int(j) for j in np.lexsort((ids, -xi)) if xi[j] > 1e-9]
        dist_order = np.argsort(inst.d[i], kind="stable")
        sorted_row = inst.d[i][dist_order]
        for beta in range(2, alpha + 1):
            C: List[int] = []
            for j in scan:
                ok = True
                for rest in combinations(C, beta - 1):
                    B = rest + (j,)
                    cost = float(inst.d[i, list(B)].sum()) + _cheapest_completion(sorted_row, dist_order, B, alpha - beta)
                    if cost <= threshold:
                        ok = False
                        break
                if ok:
                    C.append(j)
            if float(xi[C].sum()) > beta - 1 + VIOLATION_TOL:
                rows.append(_ub_row(vm, CutFamily.GENERAL_UB, i, sorted(C), beta))
                break
    logger.debug("General UB separation", ub=UB, rows=len(rows))
    return rows
