"""
Separation of lifted rows sum_j w_j x_ij <= z for one customer.

Feasible coefficient vectors satisfy, for every alpha-subset A considered,

    sum_{j in A} w_j <= max{LB, d_iA}.

Two forms are supported:

- full: free w over all facilities and every A (used for the LF1 bound);
- support-restricted: w >= 0 on supp(x*_i), only subsets with d_iA <= UB,
  followed by greedy completion of the coefficients outside the support
  (used inside branch-and-cut).
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..config import settings
from ..core.models import BudgetExceededError
from ..core.objective import subset_array
from ..instance.models import Instance
from ..lp.model import LpModel, LpRow, LpStatus, Relation
from ..lp.simplex import SimplexOptions, lp_solve
from .models import LiftedCoefficients, LiftingError

logger = structlog.get_logger()

SUPPORT_TOL = 1e-9
VIOLATION_TOL = 1e-6


def _lifted_rhs(LB: float, cost: float) -> float:
    return max(LB, cost)


def _support_constraints(
    d_row: np.ndarray,
    supp: Sequence[int],
    alpha: int,
    LB: float,
    UB: float,
    budget: int,
) -> List[Tuple[Tuple[int, ...], float]]:
    """
    One constraint per nonempty S ⊆ supp with |S| <= alpha: the tightest
    max{LB, d_iA} over completions A ⊇ S with A ∩ supp = S and d_iA <= UB.
    """
    supp_set = set(supp)
    outside = np.sort(np.array([d_row[j] for j in range(len(d_row)) if j not in supp_set]))
    prefix = np.concatenate([[0.0], np.cumsum(outside)])
    count = sum(comb(len(supp), k) for k in range(1, alpha + 1))
    if count > budget:
        raise BudgetExceededError(
            f"lifted separation: {count} support subsets exceed the budget of {budget}"
        )
    constraints: List[Tuple[Tuple[int, ...], float]] = []
    for size in range(1, min(alpha, len(supp)) + 1):
        fill = alpha - size
        if fill > len(outside):
            continue
        for S in combinations(supp, size):
            cost = float(sum(d_row[j] for j in S) + prefix[fill])
            if cost <= UB + 1e-9 * (1.0 + abs(UB)):
                constraints.append((S, _lifted_rhs(LB, cost)))
    return constraints


def _full_constraints(d_row: np.ndarray, alpha: int, LB: float, UB: float, budget: int) -> List[Tuple[Tuple[int, ...], float]]:
    m = len(d_row)
    if comb(m, alpha) > budget:
        raise BudgetExceededError(f"lifted separation: C({m}, {alpha}) exceeds the budget of {budget}")
    subsets = subset_array(m, alpha)
    costs = d_row[subsets].sum(axis=1)
    return [
        (tuple(int(j) for j in A), _lifted_rhs(LB, float(c)))
        for A, c in zip(subsets, costs)
        if c <= UB + 1e-9 * (1.0 + abs(UB))
    ]


def complete_coefficients(
    inst: Instance,
    i: int,
    w_partial: Dict[int, float],
    LB: float,
    alpha: int,
    support: Optional[Sequence[int]] = None,
    max_subsets: Optional[int] = None,
) -> Dict[int, float]:
    """
    Extend coefficients known on a support set to every facility.

    Facilities outside the support are processed in increasing d_ij (ties by
    id); each receives

        max(0, min_{B ⊆ J \\ {j}, |B| = alpha - 1} [max{LB, d_iB + d_ij} - sum_B w])

    where facilities not yet processed count with w = 0. Above the
    enumeration budget the minimum is replaced by a lower estimate, which only
    weakens the row.
    """
    budget = settings.completion_max_subsets if max_subsets is None else max_subsets
    m = inst.m
    d_row = inst.d[i]
    w = np.zeros(m)
    for j, value in w_partial.items():
        w[j] = value
    known = set(w_partial) if support is None else set(support) | set(w_partial)
    order = [int(j) for j in np.argsort(d_row, kind="stable") if int(j) not in known]
    exact = comb(m - 1, alpha - 1) <= budget
    if not exact:
        logger.debug("Completion above enumeration budget, using lower estimate", customer=i, m=m, alpha=alpha)

    for j in order:
        others = np.array([k for k in range(m) if k != j], dtype=np.intp)
        if alpha == 1:
            best = _lifted_rhs(LB, float(d_row[j]))
        elif exact:
            B = subset_array(len(others), alpha - 1)
            members = others[B]
            values = np.maximum(LB, d_row[members].sum(axis=1) + d_row[j]) - w[members].sum(axis=1)
            best = float(values.min())
        else:
            cheapest = np.sort(d_row[others])[: alpha - 1].sum()
            heaviest = np.sort(w[others])[::-1][: alpha - 1].sum()
            lower = _lifted_rhs(LB, float(cheapest + d_row[j])) - float(heaviest)
            # candidate B: alpha - 1 facilities minimising d - w
            pick = others[np.argsort(d_row[others] - w[others], kind="stable")[: alpha - 1]]
            candidate = _lifted_rhs(LB, float(d_row[pick].sum() + d_row[j])) - float(w[pick].sum())
            best = candidate if candidate <= lower + 1e-12 else lower
        w[j] = max(0.0, best)

    return {j: float(w[j]) for j in range(m) if w[j] != 0.0}


def separate_lifted(
    inst: Instance,
    i: int,
    x_star_i: np.ndarray,
    z_star: float,
    LB: float,
    UB: float,
    alpha: int,
    nonnegative: bool = True,
    support_only: bool = True,
    complete: bool = True,
    budget: Optional[int] = None,
    options: Optional[SimplexOptions] = None,
) -> Optional[LiftedCoefficients]:
    """
    Find a lifted row for customer i violated at (x*_i, z*).

    Args:
        x_star_i: Fractional assignment of customer i over all facilities
        z_star: Current value of z
        LB / UB: Bounds the coefficients are lifted with / restricted by
        nonnegative: Require w >= 0
        support_only: Only price facilities in supp(x*_i), enumerating the
            support subsets; coefficients outside are completed greedily
        complete: Run greedy completion (support-restricted form only)
        options: Simplex options for the separation LP (deadline hook)

    Returns:
        Coefficients when the separation optimum exceeds z* + 1e-6, else None.

    Raises:
        LiftingError: separation LP unbounded or not solved
        BudgetExceededError: subset enumeration above the budget
    """
    if budget is not None:
        limit = budget
    else:
        limit = settings.lifted_max_rows if support_only else settings.max_subsets
    d_row = inst.d[i]
    x_row = np.asarray(x_star_i, dtype=np.float64)
    if support_only:
        cols = [int(j) for j in np.flatnonzero(x_row > SUPPORT_TOL)]
        if not cols:
            raise LiftingError(f"customer {i}: empty support")
        constraints = _support_constraints(d_row, cols, alpha, LB, UB, limit)
    else:
        cols = list(range(inst.m))
        constraints = _full_constraints(d_row, alpha, LB, UB, limit)

    pos = {j: k for k, j in enumerate(cols)}
    rows = tuple(
        LpRow(tuple(pos[j] for j in S), (1.0,) * len(S), Relation.LE, rhs)
        for S, rhs in constraints
    )
    num_vars = len(cols)
    lo = np.zeros(num_vars) if nonnegative else np.full(num_vars, -np.inf)
    model = LpModel(
        num_vars=num_vars,
        objective=-x_row[cols],
        var_lo=lo,
        var_hi=np.full(num_vars, np.inf),
        rows=rows,
    )
    solution = lp_solve(model, options=options)
    if solution.status is LpStatus.UNBOUNDED:
        raise LiftingError(f"customer {i}: lifted separation LP unbounded (facility outside every subset within UB)")
    if not solution.is_optimal:
        raise LiftingError(f"customer {i}: lifted separation LP ended with status {solution.status.value}")

    value = -solution.objective_value
    if value <= z_star + VIOLATION_TOL:
        return None

    w = {j: float(solution.primal[pos[j]]) for j in cols if solution.primal[pos[j]] != 0.0}
    if support_only and complete:
        w = complete_coefficients(inst, i, w, LB, alpha, support=cols)
    logger.debug("Lifted row separated", customer=i, value=value, z=z_star, lb=LB, ub=UB)
    return LiftedCoefficients(customer=i, w=w, lb_used=LB, ub_used=UB, value=value)
