"""
Layered formulation (F2): one assignment layer per rank b = 1..alpha.

    sum_j x^b_ij = 1                                  for all i, b
    sum_b x^b_ij <= y_j                               for all i, j
    sum_j d_ij x^b_ij <= sum_j d_ij x^(b+1)_ij        for all i, b < alpha
    sum_b sum_j d_ij x^b_ij <= z                      for all i
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np
import structlog

from ..instance.models import Instance
from ..lp.model import LpModel, LpRow, Relation
from .var_map import FormulationKind, VarMap, check_problem_args

logger = structlog.get_logger()


def build_f2_relaxation(inst: Instance, p: int, alpha: int) -> Tuple[LpModel, VarMap]:
    """
    Build (F2-R).

    Raises:
        FormulationError: unless 1 <= alpha <= p < m
    """
    check_problem_args(inst, p, alpha)
    vm = VarMap(kind=FormulationKind.F2, n=inst.n, m=inst.m, alpha=alpha)
    n, m, d = inst.n, inst.m, inst.d

    rows: List[LpRow] = [
        LpRow(
            indices=tuple(vm.y_index(j) for j in range(m)),
            coefs=(1.0,) * m,
            relation=Relation.EQ,
            rhs=float(p),
            name="sumy",
        )
    ]
    for b in range(alpha):
        for i in range(n):
            rows.append(
                LpRow(
                    indices=tuple(vm.x_index(i, j, b) for j in range(m)),
                    coefs=(1.0,) * m,
                    relation=Relation.EQ,
                    rhs=1.0,
                    name=f"assign{b + 1}_{i + 1}",
                )
            )
    for i in range(n):
        for j in range(m):
            rows.append(
                LpRow(
                    indices=tuple(vm.x_index(i, j, b) for b in range(alpha)) + (vm.y_index(j),),
                    coefs=(1.0,) * alpha + (-1.0,),
                    relation=Relation.LE,
                    rhs=0.0,
                    name=f"link_{i + 1}_{j + 1}",
                )
            )
    for i in range(n):
        nz = [j for j in range(m) if d[i, j] != 0.0]
        for b in range(alpha - 1):
            coefs = {vm.x_index(i, j, b): float(d[i, j]) for j in nz}
            coefs.update({vm.x_index(i, j, b + 1): -float(d[i, j]) for j in nz})
            rows.append(LpRow.from_dict(coefs, Relation.LE, 0.0, name=f"order{b + 1}_{i + 1}"))
        coefs = {vm.x_index(i, j, b): float(d[i, j]) for b in range(alpha) for j in nz}
        coefs[vm.z_index] = -1.0
        rows.append(LpRow.from_dict(coefs, Relation.LE, 0.0, name=f"dist_{i + 1}"))

    objective = np.zeros(vm.num_vars)
    objective[vm.z_index] = 1.0
    lo = np.zeros(vm.num_vars)
    hi = np.full(vm.num_vars, np.inf)
    hi[vm.num_x: vm.num_x + m] = 1.0

    model = LpModel(
        num_vars=vm.num_vars,
        objective=objective,
        var_lo=lo,
        var_hi=hi,
        rows=tuple(rows),
        var_names=vm.var_names(),
    )
    logger.debug("Built F2 relaxation", n=n, m=m, p=p, alpha=alpha, rows=model.num_rows)
    return model, vm
