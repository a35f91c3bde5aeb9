"""
Lifted assignment bound LB#1.

LF1(LB) is (F1-R) with x <= 1 and, per customer, every row
sum_j w_j x_ij <= z with w in the lifted coefficient polyhedron. The family is
too large to enumerate, so it is separated: solve, add violated rows, repeat.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np
import structlog

from ..core.objective import enumerate_alpha_distances
from ..cuts.lifted import lifted_cut
from ..formulations.f1 import build_f1_relaxation
from ..instance.models import Instance
from ..lp.model import LpRow
from ..lp.simplex import lp_solve
from .bounds import run_lb_fixpoint
from .models import BoundResult, LiftingError, LiftVariant
from .separation import separate_lifted

logger = structlog.get_logger()

MAX_CUTTING_PLANE_ROUNDS = 1000


def lf1_value(inst: Instance, p: int, alpha: int, LB: float, max_rounds: int = MAX_CUTTING_PLANE_ROUNDS) -> float:
    """
    Optimal value of LF1(LB) by cutting planes.

    Raises:
        LiftingError: LP failure or no convergence within ``max_rounds``
    """
    model, vm = build_f1_relaxation(inst, p, alpha, include_all_linking=True, x_upper=1.0)
    basis = None
    for round_no in range(1, max_rounds + 1):
        solution = lp_solve(model, warm_start=basis)
        if not solution.is_optimal:
            raise LiftingError(f"LF1 LP at LB={LB} ended with status {solution.status.value}")
        x = solution.primal[: vm.num_x].reshape(inst.n, inst.m)
        z = float(solution.primal[vm.z_index])
        new_rows: List[LpRow] = []
        for i in range(inst.n):
            found = separate_lifted(
                inst,
                i,
                x[i],
                z,
                LB,
                float("inf"),
                alpha,
                nonnegative=False,
                support_only=False,
            )
            if found is not None:
                new_rows.append(lifted_cut(vm, i, found.w).to_lp_row(name=f"lifted{round_no}_{i + 1}"))
        if not new_rows:
            logger.debug("LF1 converged", lb=LB, value=solution.objective_value, rounds=round_no, rows=model.num_rows)
            return solution.objective_value
        model = model.add_rows(new_rows)
        if solution.basis is not None:
            basis = solution.basis.with_rows_appended(len(new_rows))
    raise LiftingError(f"LF1 cutting planes did not converge within {max_rounds} rounds at LB={LB}")


def run_lb1_fixpoint(inst: Instance, p: int, alpha: int, D: Optional[Sequence[float]] = None) -> BoundResult:
    if D is None:
        D = enumerate_alpha_distances(inst, alpha)
    return run_lb_fixpoint(
        inst,
        p,
        alpha,
        LiftVariant.L1,
        lifted_value=lambda lb: lf1_value(inst, p, alpha, lb),
        D=D,
    )


def compute_lb_sharp_1(inst: Instance, p: int, alpha: int) -> float:
    """LB#1, the fixpoint of the lifted assignment relaxation."""
    return run_lb1_fixpoint(inst, p, alpha).value
