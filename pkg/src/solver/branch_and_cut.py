"""
Branch-and-cut on the assignment formulation (F1).

Node bound: (F1-R) with the node's y fixings, the global x fixings and the
active cut pool rows, tightened by separation rounds. Nodes are explored
best-bound first (deeper nodes first among equal bounds). An LP optimum with
integral y is evaluated in closed form: once y is fixed, the closest
assignment is optimal.
"""

from __future__ import annotations

import heapq
from itertools import count
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..core.models import BudgetExceededError, CoreError, Solution
from ..core.objective import enumerate_alpha_distances, evaluate
from ..cuts.fixings import remoteness_fixings
from ..cuts.linking import distance_order, linking_rows_initial, violated_linking_for
from ..cuts.models import CutError
from ..formulations.f1 import build_f1_relaxation
from ..formulations.var_map import FormulationError, check_problem_args
from ..heuristics.models import HeuristicConfig
from ..heuristics.portfolio import primal_round, run_start_portfolio
from ..instance.models import Instance
from ..lifting.models import LiftingError
from ..lp.model import Basis, LpError, LpModel, LpRow, LpSolution, LpStatus
from ..lp.simplex import SimplexOptions, lp_solve
from ..utils.metrics import MetricsRegistry, Stopwatch
from .config import BncConfig
from .cut_pool import CutPool
from .models import NodeState, RunReport, SolverError, SolveStatus
from .separation import (
    SeparationState,
    apply_ub_fixings,
    push_lower_bound,
    round_up_bound,
    separation_round,
)

logger = structlog.get_logger()

INTEGRALITY_TOL = 1e-6
# Relative tolerance for comparing objective values.
OBJECTIVE_TOL = 1e-6
# Bounds rounded to attainable alpha-distances are compared almost exactly.
EXACT_TOL = 1e-11
PROGRESS_EVERY = 100


class _TimeUp(Exception):
    pass


def evaluate_leaf(inst: Instance, y_integral: np.ndarray, alpha: int, p: Optional[int] = None) -> Tuple[float, Solution]:
    """
    Value of the best completion of an integral y: open P = {j : y_j = 1} and
    serve every customer by its alpha closest open facilities.

    Raises:
        SolverError: y not integral, or not exactly p open facilities
    """
    y = np.asarray(y_integral, dtype=np.float64)
    if np.any(np.abs(y - np.round(y)) > INTEGRALITY_TOL):
        raise SolverError("leaf evaluation needs an integral y")
    open_set = np.flatnonzero(y > 0.5)
    if p is not None and open_set.size != p:
        raise SolverError(f"leaf has {open_set.size} open facilities, expected p={p}")
    if open_set.size < alpha:
        raise SolverError(f"leaf has {open_set.size} open facilities, fewer than alpha={alpha}")
    solution = evaluate(inst, open_set, alpha)
    return solution.value, solution


def branch_select(y_fractional: np.ndarray) -> int:
    """
    Most fractional facility, min |y_j - 0.5|, ties by lowest index.

    Raises:
        SolverError: no fractional entry
    """
    y = np.asarray(y_fractional, dtype=np.float64)
    fractional = np.abs(y - np.round(y)) > INTEGRALITY_TOL
    if not np.any(fractional):
        raise SolverError("no fractional y to branch on")
    # rounding keeps 0.2 and 0.8 tied
    score = np.where(fractional, np.round(np.abs(y - 0.5), 9), np.inf)
    return int(np.argmin(score))


def _remap_basis(basis: Optional[Basis], old_keys: Sequence[int], new_keys: Sequence[int]) -> Optional[Basis]:
    if basis is None or len(old_keys) != basis.logical.size:
        return None
    status = dict(zip(old_keys, basis.logical))
    logical = np.array([status.get(k, Basis.BASIC) for k in new_keys], dtype=np.int8)
    return Basis(structural=basis.structural.copy(), logical=logical)


class BranchAndCut:
    """
    One solve of one instance. Not reusable.
    """

    def __init__(self, inst: Instance, p: int, alpha: int, config: Optional[BncConfig] = None) -> None:
        try:
            check_problem_args(inst, p, alpha)
        except FormulationError as e:
            raise SolverError(str(e)) from e
        self.inst = inst
        self.p = p
        self.alpha = alpha
        self.config = config or BncConfig.from_settings()
        self.setting = self.config.setting
        self.watch = Stopwatch(self.config.time_limit_s)
        self.metrics = MetricsRegistry()

        self.base, self.vm = build_f1_relaxation(
            inst, p, alpha, include_all_linking=not self.setting.separate_linking
        )
        self.base_keys = tuple(-(r + 1) for r in range(self.base.num_rows))

        try:
            D: Optional[List[float]] = enumerate_alpha_distances(inst, alpha)
        except BudgetExceededError as e:
            logger.info("Alpha-distance enumeration skipped, bounds not rounded", reason=str(e))
            D = None

        self.state = SeparationState(
            inst=inst,
            p=p,
            alpha=alpha,
            vm=self.vm,
            rng=np.random.default_rng(self.config.seed),
            facility_order=distance_order(inst),
            LB=float(D[0]) if D else 0.0,
            D=D,
            expired=self.watch.expired,
        )
        self._lp_options = SimplexOptions(interrupt=self.watch.expired)
        self.pool = CutPool()
        self._lp_rows: Dict[int, LpRow] = {}
        self.incumbent: Optional[Solution] = None
        self.root_LB = float("-inf")
        self.root_lp_bound = float("nan")
        self.root_time_s = 0.0
        self._seq = count()

    # -------------------------------------------------------------------------
    # Incumbent and bounds
    # -------------------------------------------------------------------------

    @property
    def UB(self) -> float:
        return self.state.UB

    def _offer(self, solution: Solution, source: str) -> bool:
        if solution.size != self.p:
            raise SolverError(f"{source} produced {solution.size} facilities, expected p={self.p}")
        if solution.value < self.state.UB:
            self.incumbent = solution
            self.state.UB = solution.value
            self.metrics.increment("incumbents")
            logger.info(
                "New incumbent",
                value=solution.value,
                source=source,
                open=[j + 1 for j in solution.sorted_open()],
                elapsed_s=round(self.watch.elapsed(), 3),
            )
            return True
        return False

    def _prunable(self, bound: float) -> bool:
        UB = self.state.UB
        if not np.isfinite(UB):
            return False
        tol = EXACT_TOL if self.state.D is not None else OBJECTIVE_TOL
        return bound >= UB - tol * (1.0 + abs(UB))

    # -------------------------------------------------------------------------
    # Node LP
    # -------------------------------------------------------------------------

    def _lp_row(self, key: int) -> LpRow:
        row = self._lp_rows.get(key)
        if row is None:
            row = self.pool.row(key).to_lp_row()
            self._lp_rows[key] = row
        return row

    def _node_model(self, node: NodeState) -> Tuple[LpModel, Tuple[int, ...]]:
        vm = self.vm
        lo = self.base.var_lo.copy()
        hi = self.base.var_hi.copy()
        for i, j in self.state.fixed:
            hi[vm.x_index(i, j)] = 0.0
        for j, value in node.y_fixed.items():
            lo[vm.y_index(j)] = hi[vm.y_index(j)] = float(value)
        lo[vm.z_index] = self.state.z_floor
        keys = self.pool.active_ids()
        model = self.base.with_bounds(lo, hi).add_rows(self._lp_row(k) for k in keys)
        return model, self.base_keys + tuple(keys)

    def _solve_node_lp(self, node: NodeState, basis: Optional[Basis], old_keys: Sequence[int]) -> Tuple[LpSolution, Tuple[int, ...]]:
        model, keys = self._node_model(node)
        solution = lp_solve(model, warm_start=_remap_basis(basis, old_keys, keys), options=self._lp_options)
        self.metrics.increment("lp_solves")
        if solution.is_optimal and solution.basis is not None:
            nb = len(self.base_keys)
            pool_keys = keys[nb:]
            if pool_keys:
                activity = solution.row_activity[nb:]
                slacks = np.array(
                    [min(act - lo, hi - act) for act, (lo, hi) in zip(activity, (self._lp_row(k).bounds() for k in pool_keys))]
                )
                self.pool.record_solve(pool_keys, slacks, solution.basis.logical[nb:])
        return solution, keys

    # -------------------------------------------------------------------------
    # Node processing
    # -------------------------------------------------------------------------

    def _process(self, node: NodeState, push) -> None:
        inst, vm, config = self.inst, self.vm, self.config
        root = node.depth == 0
        sep_cap = config.max_num_sep_root if root else config.max_num_sep_tree
        basis, keys = node.basis, node.row_keys
        rounds = stalls = 0
        last_bound = float("-inf")
        bound = node.bound

        while True:
            if self.watch.expired():
                raise _TimeUp()
            lp, keys = self._solve_node_lp(node, basis, keys)
            if lp.status is LpStatus.TIME_LIMIT:
                raise _TimeUp()
            if lp.status is LpStatus.INFEASIBLE:
                logger.debug("Node infeasible", depth=node.depth)
                return
            if not lp.is_optimal:
                raise SolverError(f"node LP ended with status {lp.status.value}")
            basis = lp.basis
            z = lp.objective_value
            bound = max(node.bound, round_up_bound(self.state.D, z))
            if root:
                if np.isnan(self.root_lp_bound):
                    self.root_lp_bound = z
                self.root_LB = max(self.root_LB, bound)
                push_lower_bound(self.state, z)
            if self._prunable(bound):
                return

            x = lp.primal[: vm.num_x].reshape(inst.n, inst.m)
            y = lp.primal[vm.num_x: vm.num_x + inst.m]
            if self.setting.heuristics:
                self._offer(primal_round(inst, y, self.p, self.alpha), "LP rounding")
                if self._prunable(bound):
                    return

            if np.all(np.abs(y - np.round(y)) <= INTEGRALITY_TOL):
                value, leaf = evaluate_leaf(inst, y, self.alpha, self.p)
                self._offer(leaf, "integral LP")
                if z >= value - OBJECTIVE_TOL * (1.0 + abs(value)):
                    return
                added = self.pool.add(violated_linking_for(inst, x, np.round(y), vm))
                added += self.pool.reactivate_violated(lp.primal)
                if not added:
                    raise SolverError(
                        f"integral LP point with z={z} below its leaf value {value} and no violated row"
                    )
                continue

            if rounds >= sep_cap or stalls >= config.max_no_improvements:
                break
            result = separation_round(node, lp, self.state, config)
            added = self.pool.add(result.rows)
            added += self.pool.reactivate_violated(lp.primal)
            if not added and not result.fixings and not result.z_floor_raised:
                break
            rounds += 1
            stalls = stalls + 1 if bound - last_bound < config.improvement_threshold else 0
            last_bound = bound

        j = branch_select(y)
        for value in (0, 1):
            fixed = dict(node.y_fixed)
            fixed[j] = value
            child = NodeState(y_fixed=fixed, bound=bound, depth=node.depth + 1, basis=basis, row_keys=keys)
            if child.is_feasible(self.p, inst.m):
                push(child)

    # -------------------------------------------------------------------------
    # Search
    # -------------------------------------------------------------------------

    def run(self) -> RunReport:
        inst, config = self.inst, self.config
        logger.info(
            "Branch-and-cut started",
            instance=inst.name,
            n=inst.n,
            m=inst.m,
            p=self.p,
            alpha=self.alpha,
            setting=self.setting.value,
        )
        if self.setting.heuristics:
            start = run_start_portfolio(
                inst, self.p, self.alpha, HeuristicConfig(runs=config.num_start_heur_runs, seed=config.seed)
            )
            self._offer(start, "start heuristic")
            self.state.fixed.update(remoteness_fixings(inst, self.p, self.alpha))
            apply_ub_fixings(self.state)
            logger.info("Fixings applied", fixed=len(self.state.fixed), ub=self.state.UB)
        if self.setting.separate_linking:
            self.pool.add(linking_rows_initial(inst, config.num_initial_cuts, self.vm))

        heap: List[Tuple[float, int, int, NodeState]] = []

        def push(node: NodeState) -> None:
            heapq.heappush(heap, (node.bound, -node.depth, next(self._seq), node))

        push(NodeState(y_fixed={}, bound=self.state.LB, depth=0))
        processed = 0
        status = SolveStatus.OPTIMAL
        message = ""
        while heap:
            if self.watch.expired():
                status = SolveStatus.TIME_LIMIT
                break
            bound, _, _, node = heapq.heappop(heap)
            if self._prunable(bound):
                continue
            processed += 1
            self.metrics.observe_max("depth", node.depth)
            try:
                self._process(node, push)
            except _TimeUp:
                push(node)
                status = SolveStatus.TIME_LIMIT
                break
            except (LpError, SolverError, CoreError, CutError, LiftingError) as e:
                logger.error("Branch-and-cut failed", error=str(e), depth=node.depth)
                push(node)
                status = SolveStatus.ERROR
                message = str(e)
                break
            self.metrics.observe_max("open_nodes", len(heap))
            if processed == 1:
                self.root_time_s = self.watch.elapsed()
                logger.info(
                    "Root processed",
                    root_lp=self.root_lp_bound,
                    root_lb=self.root_LB,
                    ub=self.state.UB,
                    cuts=len(self.pool),
                    time_s=round(self.root_time_s, 3),
                )
            if processed % PROGRESS_EVERY == 0:
                logger.info(
                    "Tree progress",
                    nodes=processed - 1,
                    open=len(heap),
                    lb=heap[0][0] if heap else self.state.UB,
                    ub=self.state.UB,
                )

        UB = self.state.UB
        if status is SolveStatus.OPTIMAL:
            LB = UB
            if self.incumbent is None:
                status = SolveStatus.INFEASIBLE
        else:
            open_bound = min((entry[0] for entry in heap), default=float("inf"))
            LB = min(UB, max(self.state.LB, open_bound))
        if processed <= 1:
            self.root_time_s = self.watch.elapsed()

        report = RunReport(
            status=status,
            UB=UB,
            LB=LB,
            incumbent=self.incumbent,
            nodes=max(0, processed - 1),
            root_LB=min(self.root_LB, UB) if np.isfinite(self.root_LB) else LB,
            wall_time_s=self.watch.elapsed(),
            cuts_added=dict(self.pool.added),
            fixings=len(self.state.fixed),
            lp_solves=self.metrics.counter("lp_solves"),
            root_time_s=self.root_time_s,
            root_lp_bound=self.root_lp_bound,
            instance=inst.name,
            p=self.p,
            alpha=self.alpha,
            setting=self.setting.value,
            message=message,
        )
        logger.info(
            "Branch-and-cut finished",
            status=status.value,
            ub=UB,
            lb=LB,
            nodes=report.nodes,
            time_s=round(report.wall_time_s, 3),
            **self.metrics.snapshot(),
        )
        return report


def solve(inst: Instance, p: int, alpha: int, config: Optional[BncConfig] = None) -> RunReport:
    """
    Solve the p-alpha-closest-center problem to optimality or the time limit.

    Raises:
        SolverError: unless 1 <= alpha <= p < m
    """
    return BranchAndCut(inst, p, alpha, config).run()
