"""
Assignment formulation (F1) and its LP relaxation.

    min z
    s.t. sum_j y_j = p
         sum_j x_ij = alpha                 for all i
         x_ij <= y_j                        for all i, j (optional up front)
         sum_j d_ij x_ij <= z               for all i
         x >= 0, 0 <= y <= 1
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np
import structlog

from ..instance.models import Instance
from ..lp.model import LpModel, LpRow, Relation
from .var_map import FormulationKind, VarMap, check_problem_args, default_include_all_linking

logger = structlog.get_logger()


def f1_var_map(inst: Instance, alpha: int) -> VarMap:
    return VarMap(kind=FormulationKind.F1, n=inst.n, m=inst.m, alpha=alpha)


def linking_row(vm: VarMap, i: int, j: int) -> LpRow:
    """x_ij - y_j <= 0"""
    return LpRow(
        indices=(vm.x_index(i, j), vm.y_index(j)),
        coefs=(1.0, -1.0),
        relation=Relation.LE,
        rhs=0.0,
        name=f"link_{i + 1}_{j + 1}",
    )


def distance_row(vm: VarMap, i: int, weights: np.ndarray, name: str = "") -> LpRow:
    """sum_j w_j x_ij - z <= 0"""
    nz = np.flatnonzero(weights)
    return LpRow(
        indices=tuple(vm.x_index(i, int(j)) for j in nz) + (vm.z_index,),
        coefs=tuple(float(weights[j]) for j in nz) + (-1.0,),
        relation=Relation.LE,
        rhs=0.0,
        name=name or f"dist_{i + 1}",
    )


def build_f1_relaxation(
    inst: Instance,
    p: int,
    alpha: int,
    include_all_linking: Optional[bool] = None,
    x_upper: Optional[float] = None,
) -> Tuple[LpModel, VarMap]:
    """
    Build (F1-R).

    Args:
        include_all_linking: Add every x_ij <= y_j row. None picks the
            default (all rows when n*m <= 40,000).
        x_upper: Optional explicit upper bound on the x columns.

    Raises:
        FormulationError: unless 1 <= alpha <= p < m
    """
    check_problem_args(inst, p, alpha)
    linking = default_include_all_linking(inst, include_all_linking)
    vm = f1_var_map(inst, alpha)
    n, m = inst.n, inst.m

    rows: List[LpRow] = [
        LpRow(
            indices=tuple(vm.y_index(j) for j in range(m)),
            coefs=(1.0,) * m,
            relation=Relation.EQ,
            rhs=float(p),
            name="sumy",
        )
    ]
    for i in range(n):
        rows.append(
            LpRow(
                indices=tuple(vm.x_index(i, j) for j in range(m)),
                coefs=(1.0,) * m,
                relation=Relation.EQ,
                rhs=float(alpha),
                name=f"assign_{i + 1}",
            )
        )
    if linking:
        rows.extend(linking_row(vm, i, j) for i in range(n) for j in range(m))
    for i in range(n):
        rows.append(distance_row(vm, i, inst.d[i]))

    objective = np.zeros(vm.num_vars)
    objective[vm.z_index] = 1.0
    lo = np.zeros(vm.num_vars)
    hi = np.full(vm.num_vars, np.inf)
    hi[vm.num_x: vm.num_x + m] = 1.0
    if x_upper is not None:
        hi[: vm.num_x] = x_upper

    model = LpModel(
        num_vars=vm.num_vars,
        objective=objective,
        var_lo=lo,
        var_hi=hi,
        rows=tuple(rows),
        var_names=vm.var_names(),
    )
    logger.debug("Built F1 relaxation", n=n, m=m, p=p, alpha=alpha, rows=model.num_rows, linking=linking)
    return model, vm
