"""
Subset formulation (F3) and its valid-inequality variant (F3-V).

One column x_iA per customer and alpha-subset A of facilities:

    sum_A x_iA = 1                       for all i
    x_iA <= y_j            (F3)          for all i, A, j in A
    sum_{A ∋ j} x_iA <= y_j   (F3-V)     for all i, j
    sum_A c_iA x_iA <= z                 for all i

with c_iA = d_iA, or max{LB, d_iA} for the lifted models.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np
import structlog

from ..config import settings
from ..core.objective import check_subset_budget, subset_array
from ..instance.models import Instance
from ..lp.model import LpModel, LpRow, Relation
from .var_map import FormulationKind, VarMap, check_problem_args

logger = structlog.get_logger()


def f3_var_map(inst: Instance, alpha: int, with_valid: bool, budget: Optional[int] = None) -> VarMap:
    """
    Raises:
        BudgetExceededError: C(m, alpha) above the subset budget
    """
    check_subset_budget(inst.m, alpha, settings.max_subsets if budget is None else budget, what="F3 subset catalog")
    catalog = tuple(tuple(int(j) for j in row) for row in subset_array(inst.m, alpha))
    kind = FormulationKind.F3V if with_valid else FormulationKind.F3
    return VarMap(kind=kind, n=inst.n, m=inst.m, alpha=alpha, subset_catalog=catalog)


def subset_distances(inst: Instance, vm: VarMap) -> np.ndarray:
    """d_iA for every customer and catalog subset, shape (n, C)."""
    subsets = np.asarray(vm.subset_catalog, dtype=np.intp)
    return inst.d[:, subsets].sum(axis=2)


def build_f3_relaxation(
    inst: Instance,
    p: int,
    alpha: int,
    with_valid: bool = False,
    lift_lb: Optional[float] = None,
    budget: Optional[int] = None,
) -> Tuple[LpModel, VarMap]:
    """
    Build (F3-R) or (F3-V-R).

    Args:
        with_valid: Use the aggregated rows sum_{A ∋ j} x_iA <= y_j instead
            of one row per element of A.
        lift_lb: When given, distance coefficients become max{LB, d_iA}.

    Raises:
        FormulationError: unless 1 <= alpha <= p < m
        BudgetExceededError: C(m, alpha) above the subset budget
    """
    check_problem_args(inst, p, alpha)
    vm = f3_var_map(inst, alpha, with_valid, budget)
    n, m = inst.n, inst.m
    catalog = vm.subset_catalog
    num_subsets = len(catalog)
    dist = subset_distances(inst, vm)
    if lift_lb is not None:
        dist = np.maximum(dist, lift_lb)

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
                indices=tuple(vm.x_index(i, a) for a in range(num_subsets)),
                coefs=(1.0,) * num_subsets,
                relation=Relation.EQ,
                rhs=1.0,
                name=f"assign_{i + 1}",
            )
        )

    if with_valid:
        containing: List[List[int]] = [[] for _ in range(m)]
        for a, A in enumerate(catalog):
            for j in A:
                containing[j].append(a)
        for i in range(n):
            for j in range(m):
                rows.append(
                    LpRow(
                        indices=tuple(vm.x_index(i, a) for a in containing[j]) + (vm.y_index(j),),
                        coefs=(1.0,) * len(containing[j]) + (-1.0,),
                        relation=Relation.LE,
                        rhs=0.0,
                        name=f"valid_{i + 1}_{j + 1}",
                    )
                )
    else:
        for i in range(n):
            for a, A in enumerate(catalog):
                for j in A:
                    rows.append(
                        LpRow(
                            indices=(vm.x_index(i, a), vm.y_index(j)),
                            coefs=(1.0, -1.0),
                            relation=Relation.LE,
                            rhs=0.0,
                        )
                    )

    for i in range(n):
        nz = np.flatnonzero(dist[i])
        rows.append(
            LpRow(
                indices=tuple(vm.x_index(i, int(a)) for a in nz) + (vm.z_index,),
                coefs=tuple(float(dist[i, a]) for a in nz) + (-1.0,),
                relation=Relation.LE,
                rhs=0.0,
                name=f"dist_{i + 1}",
            )
        )

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
    logger.debug(
        "Built F3 relaxation",
        variant=vm.kind.value,
        n=n,
        subsets=num_subsets,
        rows=model.num_rows,
        lift_lb=lift_lb,
    )
    return model, vm
