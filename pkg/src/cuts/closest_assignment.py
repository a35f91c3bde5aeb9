"""
Closest-assignment rows for the subset formulations.

If j is open, customer i may not use a subset A that skips j while some
member of A is strictly farther than j:

    y_j + sum_{A : j not in A, d_ij < max_{k in A} d_ik} x_iA <= 1
"""

from __future__ import annotations

from typing import List

import numpy as np

from ..formulations.var_map import VarMap
from ..instance.models import Instance
from ..lp.model import Relation
from .models import CutError, CutFamily, CutRow


def closest_assignment_rows(inst: Instance, alpha: int, vm: VarMap) -> List[CutRow]:
    if not vm.is_subset_layout:
        raise CutError("closest-assignment rows need an F3-family variable map")
    if vm.alpha != alpha:
        raise CutError(f"variable map built for alpha={vm.alpha}, not {alpha}")
    subsets = np.asarray(vm.subset_catalog, dtype=np.intp)
    member = np.zeros((len(subsets), inst.m), dtype=bool)
    member[np.arange(len(subsets))[:, None], subsets] = True
    rows: List[CutRow] = []
    for i in range(inst.n):
        far = inst.d[i, subsets].max(axis=1)
        for j in range(inst.m):
            hits = np.flatnonzero(~member[:, j] & (inst.d[i, j] < far))
            coefs = {vm.x_index(i, int(a)): 1.0 for a in hits}
            coefs[vm.y_index(j)] = 1.0
            rows.append(CutRow.from_dict(CutFamily.CLOSEST_ASSIGN, coefs, Relation.LE, 1.0, origin_customer=i))
    return rows
