"""
Lifted distance rows sum_j w_j x_ij <= z.
"""

from __future__ import annotations

from typing import Dict

from ..formulations.var_map import VarMap
from ..lp.model import Relation
from .models import CutFamily, CutRow


def lifted_cut(vm: VarMap, customer: int, w: Dict[int, float]) -> CutRow:
    coefs = {vm.x_index(customer, j): float(value) for j, value in w.items()}
    coefs[vm.z_index] = -1.0
    return CutRow.from_dict(CutFamily.LIFTED, coefs, Relation.LE, 0.0, origin_customer=customer)
