"""
Lifted lower bounds on the subset formulations.

Given a valid lower bound LB, the lifted models replace every distance d_iA by
max{LB, d_iA}. Their optimum is again a valid lower bound, at least LB, and
the bound is raised to the next attainable alpha-distance until it stops
moving. Equivalently, LB is a fixpoint exactly when the fractional alpha set
cover restricted to subsets with d_iA <= LB needs at most p facilities.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..core.objective import DISTANCE_TOL, enumerate_alpha_distances
from ..formulations.f3 import build_f3_relaxation, f3_var_map, subset_distances
from ..instance.models import Instance
from ..lp.model import LpModel, LpRow, Relation
from ..lp.simplex import lp_solve
from .models import BoundResult, LiftingError, LiftVariant

logger = structlog.get_logger()

# |L(LB) - LB| within this (relative) means LB is a fixpoint.
FIXPOINT_TOL = 1e-9


def _within(value: float, LB: float) -> bool:
    return value <= LB + FIXPOINT_TOL * (1.0 + abs(LB))


def next_alpha_distance(D_sorted: Sequence[float], v: float, tol: float = DISTANCE_TOL) -> Tuple[float, bool]:
    """
    Smallest member of D_sorted that is >= v - tol.

    Returns:
        (value, found). When v exceeds every member, (v, False).
    """
    if len(D_sorted) == 0:
        raise LiftingError("empty alpha-distance list")
    k = int(np.searchsorted(np.asarray(D_sorted), v - tol, side="left"))
    if k >= len(D_sorted):
        return v, False
    return float(D_sorted[k]), True


def lifted_lp_value(inst: Instance, p: int, alpha: int, LB: float, variant: LiftVariant) -> float:
    """
    Optimal value of the lifted subset relaxation at LB.

    Raises:
        LiftingError: variant other than L3/L3V, or LP not solved to optimality
        BudgetExceededError: C(m, alpha) above the subset budget
    """
    if variant not in (LiftVariant.L3, LiftVariant.L3V):
        raise LiftingError(f"lifted_lp_value supports L3 and L3V, not {variant.value}")
    model, _ = build_f3_relaxation(inst, p, alpha, with_valid=variant is LiftVariant.L3V, lift_lb=LB)
    solution = lp_solve(model)
    if not solution.is_optimal:
        raise LiftingError(f"lifted LP at LB={LB} ended with status {solution.status.value}")
    return solution.objective_value


def fasc_value(inst: Instance, alpha: int, LB: float, variant: LiftVariant) -> float:
    """
    Fractional alpha set cover value at LB; +inf when some customer has no
    alpha-subset within LB.
    """
    if variant not in (LiftVariant.L3, LiftVariant.L3V):
        raise LiftingError(f"fasc_value supports L3 and L3V, not {variant.value}")
    vm = f3_var_map(inst, alpha, with_valid=variant is LiftVariant.L3V)
    catalog = vm.subset_catalog
    m = inst.m
    within = subset_distances(inst, vm) <= LB + DISTANCE_TOL * (1.0 + abs(LB))
    if not np.all(within.any(axis=1)):
        logger.debug("Set cover infeasible", lb=LB, uncovered=int(np.sum(~within.any(axis=1))))
        return float("inf")

    rows: List[LpRow] = []
    if variant is LiftVariant.L3:
        used = [int(a) for a in np.flatnonzero(within.any(axis=0))]
        col = {a: k for k, a in enumerate(used)}
        num_vars = len(used) + m
        for i in range(inst.n):
            cover = [col[int(a)] for a in np.flatnonzero(within[i])]
            rows.append(LpRow(tuple(cover), (1.0,) * len(cover), Relation.GE, 1.0, name=f"cover_{i + 1}"))
        for a in used:
            for j in catalog[a]:
                rows.append(LpRow((col[a], len(used) + j), (1.0, -1.0), Relation.LE, 0.0))
    else:
        pairs = [(i, int(a)) for i in range(inst.n) for a in np.flatnonzero(within[i])]
        col = {pair: k for k, pair in enumerate(pairs)}
        num_vars = len(pairs) + m
        for i in range(inst.n):
            cover = [col[(i, int(a))] for a in np.flatnonzero(within[i])]
            rows.append(LpRow(tuple(cover), (1.0,) * len(cover), Relation.GE, 1.0, name=f"cover_{i + 1}"))
            for j in range(m):
                members = [col[(i, int(a))] for a in np.flatnonzero(within[i]) if j in catalog[a]]
                if members:
                    rows.append(
                        LpRow(
                            tuple(members) + (num_vars - m + j,),
                            (1.0,) * len(members) + (-1.0,),
                            Relation.LE,
                            0.0,
                        )
                    )

    objective = np.zeros(num_vars)
    objective[num_vars - m:] = 1.0
    hi = np.full(num_vars, np.inf)
    hi[num_vars - m:] = 1.0
    model = LpModel(num_vars=num_vars, objective=objective, var_lo=np.zeros(num_vars), var_hi=hi, rows=tuple(rows))
    solution = lp_solve(model)
    if not solution.is_optimal:
        raise LiftingError(f"set cover LP at LB={LB} ended with status {solution.status.value}")
    return solution.objective_value


def run_lb_fixpoint(
    inst: Instance,
    p: int,
    alpha: int,
    variant: LiftVariant,
    lifted_value: Optional[Callable[[float], float]] = None,
    D: Optional[Sequence[float]] = None,
) -> BoundResult:
    """
    Iterate LB <- next alpha-distance >= L(LB), starting from min D^alpha.

    Args:
        lifted_value: Evaluates the lifted relaxation at a given LB; defaults
            to the subset formulation of ``variant``.
        D: Sorted attainable alpha-distances; enumerated when omitted.
    """
    if D is None:
        D = enumerate_alpha_distances(inst, alpha)
    evaluate = lifted_value or (lambda lb: lifted_lp_value(inst, p, alpha, lb, variant))

    LB = float(D[0])
    history: List[Tuple[float, float]] = []
    for iteration in range(1, len(D) + 2):
        value = evaluate(LB)
        history.append((LB, value))
        logger.debug("Lifted bound iteration", variant=variant.value, iteration=iteration, lb=LB, lifted=value)
        if _within(value, LB):
            logger.info("Lifted bound fixpoint", variant=variant.value, bound=LB, iterations=iteration)
            return BoundResult(value=LB, iterations=iteration, variant=variant, history=tuple(history))
        raised, found = next_alpha_distance(D, value)
        if not found:
            logger.warning("Lifted value above every alpha-distance", variant=variant.value, lifted=value)
            return BoundResult(value=value, iterations=iteration, variant=variant, history=tuple(history))
        LB = raised
    raise LiftingError(f"{variant.value} fixpoint did not converge within {len(D) + 1} iterations")


def compute_lb_sharp(inst: Instance, p: int, alpha: int, variant: LiftVariant) -> float:
    """LB# of the lifted subset formulation (L3 or L3V)."""
    return run_lb_fixpoint(inst, p, alpha, variant).value
