"""
One separation round at a node.

Steps, in order:
  1. upper-bound fixings for a newly improved incumbent
  2. linking rows
  3. simple, then general upper-bound rows
  4. lifted rows (root only)

Every customer receives at most one row per round.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Set, Tuple

import numpy as np
import structlog

from ..core.models import BudgetExceededError
from ..cuts.fixings import upper_bound_fixings
from ..cuts.lifted import lifted_cut
from ..cuts.linking import separate_linking
from ..cuts.models import CutRow
from ..cuts.upper_bound import general_ub_rows, simple_ub_rows
from ..formulations.var_map import VarMap
from ..instance.models import Instance
from ..lifting.bounds import next_alpha_distance
from ..lifting.models import LiftingError
from ..lifting.separation import separate_lifted
from ..lp.model import LpSolution
from ..lp.simplex import SimplexOptions
from .config import BncConfig
from .models import NodeState, SolverError

logger = structlog.get_logger()

Pair = Tuple[int, int]

# Relative accuracy assumed for LP objective values.
LP_BOUND_TOL = 1e-6


def _never() -> bool:
    return False


@dataclass
class SeparationState:
    """Mutable solver state the separators read and update."""

    inst: Instance
    p: int
    alpha: int
    vm: VarMap
    rng: np.random.Generator
    facility_order: np.ndarray
    UB: float = float("inf")
    LB: float = 0.0
    D: Optional[Sequence[float]] = None
    fixed: Set[Pair] = field(default_factory=set)
    fixings_ub: float = float("inf")
    z_floor: float = 0.0
    simple_rows: List[CutRow] = field(default_factory=list)
    simple_rows_ub: float = float("nan")
    expired: Callable[[], bool] = _never


@dataclass
class SeparationResult:
    rows: List[CutRow] = field(default_factory=list)
    fixings: List[Pair] = field(default_factory=list)
    z_floor_raised: bool = False

    @property
    def empty(self) -> bool:
        return not self.rows and not self.fixings and not self.z_floor_raised


def closest_assignment_scores(inst: Instance, y: np.ndarray, alpha: int, order: np.ndarray) -> np.ndarray:
    """
    sum_j d_ij xbar_ij where xbar fills alpha units of customer i over its
    facilities in distance order, each capped at y_j.
    """
    y_sorted = y[order]
    before = np.cumsum(y_sorted, axis=1) - y_sorted
    take = np.clip(np.minimum(y_sorted, alpha - before), 0.0, None)
    d_sorted = np.take_along_axis(inst.d, order, axis=1)
    return (d_sorted * take).sum(axis=1)


def round_up_bound(D: Optional[Sequence[float]], value: float) -> float:
    """
    Raise an LP bound to the next attainable alpha-distance. The LP value is
    first lowered by its own tolerance so numerical noise never skips a member.
    """
    if D is None or not np.isfinite(value):
        return value
    raised, found = next_alpha_distance(D, value, tol=LP_BOUND_TOL * (1.0 + abs(value)))
    return raised if found else value


def push_lower_bound(state: SeparationState, z: float) -> float:
    """
    Raise ``state.LB`` with the root LP value z and return it. With D^alpha at
    hand the value is rounded up to the next alpha-distance; without it, z is
    only lowered by the LP tolerance.
    """
    if not np.isfinite(z):
        return state.LB
    if state.D is not None:
        candidate = round_up_bound(state.D, max(state.LB, z))
    else:
        candidate = z - LP_BOUND_TOL * (1.0 + abs(z))
    if np.isfinite(state.UB):
        candidate = min(candidate, state.UB)
    state.LB = max(state.LB, candidate)
    return state.LB


def apply_ub_fixings(state: SeparationState) -> List[Pair]:
    """Fix x_ij = 0 for pairs excluded by the current UB; returns the new pairs."""
    if not np.isfinite(state.UB) or state.UB >= state.fixings_ub:
        return []
    new = [pair for pair in upper_bound_fixings(state.inst, state.alpha, state.UB) if pair not in state.fixed]
    state.fixed.update(new)
    state.fixings_ub = state.UB
    if new:
        logger.debug("Upper bound fixings applied", ub=state.UB, new=len(new), total=len(state.fixed))
    return new


def _simple_rows_for(state: SeparationState) -> List[CutRow]:
    if state.simple_rows_ub != state.UB:
        state.simple_rows = simple_ub_rows(state.inst, state.alpha, state.UB, state.vm)
        state.simple_rows_ub = state.UB
    return state.simple_rows


def separation_round(
    node: NodeState,
    lp: LpSolution,
    state: SeparationState,
    config: BncConfig,
) -> SeparationResult:
    """
    Run the separation steps enabled by ``config.setting`` at an LP optimum.

    Raises:
        SolverError: the LP solution is not optimal
    """
    if not lp.is_optimal:
        raise SolverError("separation needs an optimal LP solution")
    inst, vm, setting = state.inst, state.vm, config.setting
    root = node.depth == 0
    x = lp.primal[: vm.num_x].reshape(inst.n, inst.m)
    y = lp.primal[vm.num_x: vm.num_x + inst.m]
    z = float(lp.primal[vm.z_index])
    cap = None if root else config.max_num_cuts_tree
    result = SeparationResult()
    served: Set[int] = set()

    def room() -> bool:
        return cap is None or len(result.rows) < cap

    # 1. fixings
    if setting.heuristics:
        result.fixings = apply_ub_fixings(state)

    # 2. linking
    if setting.separate_linking and room():
        for row in separate_linking(inst, x, y, state.rng, vm, served, state.facility_order):
            if not room():
                break
            result.rows.append(row)
            served.add(row.origin_customer)

    # 3. upper-bound rows
    if setting.lifting and np.isfinite(state.UB):
        flat = lp.primal
        for row in _simple_rows_for(state):
            if not room():
                break
            if row.origin_customer in served or not row.is_violated(flat):
                continue
            result.rows.append(row)
            served.add(row.origin_customer)
        if room():
            remaining = None if cap is None else cap - len(result.rows)
            for row in general_ub_rows(inst, state.alpha, state.UB, x, remaining, vm, served):
                result.rows.append(row)
                served.add(row.origin_customer)

    # 4. lifted rows, root only
    if setting.lifting and root and room():
        raised = push_lower_bound(state, z)
        if raised > state.z_floor + 1e-12:
            state.z_floor = raised
            result.z_floor_raised = True
        scores = closest_assignment_scores(inst, y, state.alpha, state.facility_order)
        ranked = [int(i) for i in np.lexsort((np.arange(inst.n), -scores)) if int(i) not in served]
        options = SimplexOptions(interrupt=state.expired)
        for i in ranked[: config.num_lifted_customers]:
            if not room() or state.expired():
                break
            try:
                found_w = separate_lifted(inst, i, x[i], z, state.LB, state.UB, state.alpha, options=options)
            except (LiftingError, BudgetExceededError) as e:
                logger.debug("Lifted separation skipped", customer=i, error=str(e))
                continue
            if found_w is not None:
                result.rows.append(lifted_cut(vm, i, found_w.w))
                served.add(i)

    logger.debug(
        "Separation round",
        depth=node.depth,
        rows=len(result.rows),
        fixings=len(result.fixings),
        z=z,
        lb=state.LB,
        ub=state.UB,
    )
    return result
