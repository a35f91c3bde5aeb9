"""
Linking rows x_ij <= y_j: initial subset and separation.
"""

from __future__ import annotations

from typing import List, Optional, Set

import numpy as np
import structlog

from ..formulations.var_map import VarMap
from ..instance.models import Instance
from ..lp.model import Relation
from .models import VIOLATION_TOL, CutFamily, CutRow

logger = structlog.get_logger()


def linking_cut(vm: VarMap, i: int, j: int) -> CutRow:
    return CutRow.from_dict(
        CutFamily.LINKING,
        {vm.x_index(i, j): 1.0, vm.y_index(j): -1.0},
        Relation.LE,
        0.0,
        origin_customer=i,
    )


def distance_order(inst: Instance) -> np.ndarray:
    """Facilities per customer in increasing distance, ties by id, shape (n, m)."""
    return np.argsort(inst.d, axis=1, kind="stable")


def linking_rows_initial(inst: Instance, k: int, vm: VarMap) -> List[CutRow]:
    """Linking rows for the k closest facilities of every customer."""
    if k <= 0:
        return []
    order = distance_order(inst)[:, : min(k, inst.m)]
    return [linking_cut(vm, i, int(j)) for i in range(inst.n) for j in order[i]]


def separate_linking(
    inst: Instance,
    x_star: np.ndarray,
    y_star: np.ndarray,
    rng: np.random.Generator,
    vm: VarMap,
    skip_customers: Optional[Set[int]] = None,
    order: Optional[np.ndarray] = None,
) -> List[CutRow]:
    """
    One violated linking row per customer, the nearest violated facility.

    Customers are scanned in a random order drawn from ``rng``.
    """
    skip = skip_customers or set()
    facility_order = distance_order(inst) if order is None else order
    rows: List[CutRow] = []
    for i in rng.permutation(inst.n):
        i = int(i)
        if i in skip:
            continue
        gaps = x_star[i] - y_star
        for j in facility_order[i]:
            if gaps[j] > VIOLATION_TOL:
                rows.append(linking_cut(vm, i, int(j)))
                break
    logger.debug("Linking separation", rows=len(rows), skipped=len(skip))
    return rows


def violated_linking_for(inst: Instance, x_star: np.ndarray, y_star: np.ndarray, vm: VarMap) -> List[CutRow]:
    """Every violated linking row, customers and facilities in index order."""
    rows, cols = np.nonzero(x_star - y_star[None, :] > VIOLATION_TOL)
    return [linking_cut(vm, int(i), int(j)) for i, j in zip(rows, cols)]
