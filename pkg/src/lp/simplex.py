"""
Bounded-variable revised primal simplex.

Every row r gets a logical column s_r with A x - s = 0 and the row bounds as
bounds on s_r, so the working problem is

    min c^T x   s.t.  [A  -I] (x, s) = 0,   lo <= (x, s) <= hi.

The basis inverse is kept as a dense matrix, updated by rank-one (eta)
transformations and refactored from scratch every ``REFACTOR_EVERY`` pivots.

Phase 1 minimises the sum of bound infeasibilities of the basic variables
starting from any basis, which makes warm starts after row additions or bound
changes uniform with cold starts (all-logical basis).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
import structlog
from scipy import sparse

from .model import Basis, LpError, LpModel, LpSolution, LpStatus

logger = structlog.get_logger()

PIVOT_TOL = 1e-9
FEASIBILITY_TOL = 1e-6
OPTIMALITY_TOL = 1e-9
REFACTOR_EVERY = 100
BLAND_AFTER_DEGENERATE = 1000
_DEGENERATE_STEP = 1e-12
_RATIO_TIE = 1e-12
INTERRUPT_EVERY = 10


@dataclass(frozen=True)
class SimplexOptions:
    max_iterations: Optional[int] = None
    pivot_tol: float = PIVOT_TOL
    feasibility_tol: float = FEASIBILITY_TOL
    optimality_tol: float = OPTIMALITY_TOL
    refactor_every: int = REFACTOR_EVERY
    bland_after: int = BLAND_AFTER_DEGENERATE
    # Polled every INTERRUPT_EVERY iterations; True stops the solve with TIME_LIMIT.
    interrupt: Optional[Callable[[], bool]] = None

    def iteration_limit(self, num_cols: int, num_rows: int) -> int:
        if self.max_iterations is not None:
            return self.max_iterations
        return max(10_000, 50 * (num_cols + num_rows))


class _BoundedSimplex:
    """Working state of one solve. Not reusable across models."""

    def __init__(self, model: LpModel, options: SimplexOptions) -> None:
        self.model = model
        self.opts = options
        self.n = model.num_vars
        self.m = model.num_rows
        N = self.n + self.m
        self.N = N

        A = model.matrix.tocsc()
        if self.m:
            self.M = sparse.hstack([A, -sparse.identity(self.m, format="csc")], format="csc")
        else:
            self.M = A
        self.MT = self.M.T.tocsr()
        self.cost = np.concatenate([model.objective, np.zeros(self.m)])
        row_lo, row_hi = model.row_bounds
        self.lo = np.concatenate([model.var_lo, row_lo])
        self.hi = np.concatenate([model.var_hi, row_hi])
        self.fixed = self.lo == self.hi

        self.x = np.zeros(N)
        self.state = np.zeros(N, dtype=np.int8)
        self.basis = np.zeros(self.m, dtype=np.intp)
        self.binv = np.zeros((self.m, self.m))
        self.pivots_since_refactor = 0
        self.iterations = 0
        self.degenerate_run = 0
        self.bland = False

    # -------------------------------------------------------------------------
    # Basis handling
    # -------------------------------------------------------------------------

    def _column(self, j: int) -> np.ndarray:
        col = np.zeros(self.m)
        start, end = self.M.indptr[j], self.M.indptr[j + 1]
        col[self.M.indices[start:end]] = self.M.data[start:end]
        return col

    def _place_nonbasic(self, j: int, preferred: int) -> None:
        lo, hi = self.lo[j], self.hi[j]
        if preferred == Basis.AT_UPPER and np.isfinite(hi):
            self.state[j], self.x[j] = Basis.AT_UPPER, hi
        elif np.isfinite(lo):
            self.state[j], self.x[j] = Basis.AT_LOWER, lo
        elif np.isfinite(hi):
            self.state[j], self.x[j] = Basis.AT_UPPER, hi
        else:
            self.state[j], self.x[j] = Basis.FREE, 0.0

    def _slack_basis(self) -> None:
        for j in range(self.n):
            self._place_nonbasic(j, Basis.AT_LOWER)
        self.basis = np.arange(self.n, self.N, dtype=np.intp)
        self.state[self.n:] = Basis.BASIC
        self.binv = -np.eye(self.m)
        self.pivots_since_refactor = 0

    def _load_basis(self, warm: Basis) -> bool:
        if warm.structural.shape != (self.n,) or warm.logical.shape != (self.m,):
            return False
        status = np.concatenate([warm.structural, warm.logical]).astype(np.int8)
        basic = np.flatnonzero(status == Basis.BASIC)
        if basic.size != self.m:
            return False
        for j in np.flatnonzero(status != Basis.BASIC):
            self._place_nonbasic(int(j), int(status[j]))
        self.state[basic] = Basis.BASIC
        self.basis = basic.astype(np.intp)
        return self._refactor()

    def _refactor(self) -> bool:
        self.pivots_since_refactor = 0
        if self.m == 0:
            self.binv = np.zeros((0, 0))
            return True
        B = self.M[:, self.basis].toarray()
        try:
            binv = np.linalg.inv(B)
        except np.linalg.LinAlgError:
            return False
        if not np.all(np.isfinite(binv)):
            return False
        self.binv = binv
        return True

    def _compute_basics(self) -> None:
        x_nb = self.x.copy()
        x_nb[self.basis] = 0.0
        self.x[self.basis] = -(self.binv @ (self.M @ x_nb))

    # -------------------------------------------------------------------------
    # Iteration
    # -------------------------------------------------------------------------

    def _infeasibility(self) -> Tuple[np.ndarray, np.ndarray]:
        xb = self.x[self.basis]
        tol = self.opts.feasibility_tol
        below = xb < self.lo[self.basis] - tol
        above = xb > self.hi[self.basis] + tol
        return below, above

    def _price(self, cost_b: np.ndarray, cost_full: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        pi = cost_b @ self.binv if self.m else np.zeros(0)
        d = cost_full - self.MT @ pi
        return pi, d

    def _choose_entering(self, d: np.ndarray) -> Tuple[int, float]:
        tol = self.opts.optimality_tol
        nonbasic = (self.state != Basis.BASIC) & ~self.fixed
        at_lower = nonbasic & (self.state == Basis.AT_LOWER) & (d < -tol)
        at_upper = nonbasic & (self.state == Basis.AT_UPPER) & (d > tol)
        free = nonbasic & (self.state == Basis.FREE) & (np.abs(d) > tol)
        candidates = at_lower | at_upper | free
        if not np.any(candidates):
            return -1, 0.0
        if self.bland:
            q = int(np.flatnonzero(candidates)[0])
        else:
            scores = np.where(candidates, np.abs(d), -1.0)
            q = int(np.argmax(scores))
        direction = 1.0 if d[q] < 0 else -1.0
        return q, direction

    def _ratio_test(self, alpha: np.ndarray, direction: float) -> Tuple[int, float, int]:
        """Return (leaving row or -1, step, leaving state)."""
        tol = self.opts.feasibility_tol
        ptol = self.opts.pivot_tol
        xb = self.x[self.basis]
        lb = self.lo[self.basis]
        ub = self.hi[self.basis]
        g = direction * alpha  # x_B moves by -t * g

        below = xb < lb - tol
        above = xb > ub + tol
        feasible = ~below & ~above
        dec = g > ptol
        inc = g < -ptol

        target = np.full(self.m, np.nan)
        leave_state = np.zeros(self.m, dtype=np.int8)
        # decreasing basics stop at their lower bound (or at the upper bound
        # when they start above it)
        m_dec_feas = dec & feasible
        target[m_dec_feas] = lb[m_dec_feas]
        leave_state[m_dec_feas] = Basis.AT_LOWER
        m_dec_above = dec & above
        target[m_dec_above] = ub[m_dec_above]
        leave_state[m_dec_above] = Basis.AT_UPPER
        # increasing basics stop at their upper bound (or at the lower bound
        # when they start below it)
        m_inc_feas = inc & feasible
        target[m_inc_feas] = ub[m_inc_feas]
        leave_state[m_inc_feas] = Basis.AT_UPPER
        m_inc_below = inc & below
        target[m_inc_below] = lb[m_inc_below]
        leave_state[m_inc_below] = Basis.AT_LOWER

        blocking = np.isfinite(target)
        if not np.any(blocking):
            return -1, np.inf, 0
        steps = np.full(self.m, np.inf)
        steps[blocking] = (xb[blocking] - target[blocking]) / g[blocking]
        steps = np.maximum(steps, 0.0)
        t_min = float(steps.min())
        ties = np.flatnonzero(steps <= t_min + _RATIO_TIE)
        if self.bland:
            r = int(ties[np.argmin(self.basis[ties])])
        else:
            r = int(ties[np.argmax(np.abs(g[ties]))])
        return r, t_min, int(leave_state[r])

    def _pivot(self, r: int, q: int, alpha: np.ndarray) -> None:
        row_r = self.binv[r] / alpha[r]
        self.binv -= np.outer(alpha, row_r)
        self.binv[r] = row_r
        self.basis[r] = q
        self.pivots_since_refactor += 1

    def run(self, warm: Optional[Basis]) -> LpSolution:
        if warm is None or not self._load_basis(warm):
            if warm is not None:
                logger.debug("Warm start rejected, cold start", rows=self.m, cols=self.n)
            self._slack_basis()

        limit = self.opts.iteration_limit(self.n, self.m)
        fresh = True
        while True:
            if self.pivots_since_refactor >= self.opts.refactor_every:
                if not self._refactor():
                    logger.debug("Singular basis on refactor, restarting from slack basis")
                    self._slack_basis()
                fresh = True
            self._compute_basics()

            below, above = self._infeasibility()
            phase_one = bool(np.any(below) or np.any(above))
            if phase_one:
                cost_b = np.where(below, -1.0, np.where(above, 1.0, 0.0))
                cost_full = np.zeros(self.N)
                cost_full[self.basis] = cost_b
            else:
                cost_full = self.cost
                cost_b = self.cost[self.basis]
            pi, d = self._price(cost_b, cost_full)

            q, direction = self._choose_entering(d)
            if q < 0:
                if not fresh:
                    # confirm on a freshly factorised basis before concluding
                    if not self._refactor():
                        self._slack_basis()
                    fresh = True
                    continue
                if phase_one:
                    return self._finish(LpStatus.INFEASIBLE, None, None)
                return self._finish(LpStatus.OPTIMAL, pi, d)

            if self.iterations >= limit:
                logger.warning("Simplex iteration limit reached", iterations=self.iterations, rows=self.m, cols=self.n)
                return self._finish(LpStatus.ITER_LIMIT, None, None)
            if (
                self.opts.interrupt is not None
                and self.iterations % INTERRUPT_EVERY == 0
                and self.opts.interrupt()
            ):
                logger.debug("Simplex interrupted", iterations=self.iterations, rows=self.m, cols=self.n)
                return self._finish(LpStatus.TIME_LIMIT, None, None)
            self.iterations += 1

            alpha = self.binv @ self._column(q) if self.m else np.zeros(0)
            r, t, leave_state = self._ratio_test(alpha, direction) if self.m else (-1, np.inf, 0)

            flip = np.inf
            if np.isfinite(self.lo[q]) and np.isfinite(self.hi[q]):
                flip = self.hi[q] - self.lo[q]

            if r < 0 and not np.isfinite(flip):
                if phase_one:
                    raise LpError("phase 1 ray without blocking variable (numerical breakdown)")
                return self._finish(LpStatus.UNBOUNDED, None, None)

            step = min(t, flip)
            if step <= _DEGENERATE_STEP:
                self.degenerate_run += 1
                if not self.bland and self.degenerate_run >= self.opts.bland_after:
                    logger.debug("Switching to Bland's rule", iterations=self.iterations)
                    self.bland = True
            else:
                self.degenerate_run = 0

            if flip <= t:
                # entering variable moves to its opposite bound, basis unchanged
                if self.state[q] == Basis.AT_LOWER:
                    self.state[q], self.x[q] = Basis.AT_UPPER, self.hi[q]
                else:
                    self.state[q], self.x[q] = Basis.AT_LOWER, self.lo[q]
                fresh = False
                continue

            leaving = int(self.basis[r])
            self.x[q] = self.x[q] + direction * t
            self.state[q] = Basis.BASIC
            self.state[leaving] = leave_state
            self.x[leaving] = self.lo[leaving] if leave_state == Basis.AT_LOWER else self.hi[leaving]
            self._pivot(r, q, alpha)
            fresh = False

    # -------------------------------------------------------------------------
    # Result assembly
    # -------------------------------------------------------------------------

    def _finish(self, status: LpStatus, pi: Optional[np.ndarray], d: Optional[np.ndarray]) -> LpSolution:
        primal = self.x[: self.n].copy()
        activity = self.x[self.n:].copy()
        basis = Basis(
            structural=self.state[: self.n].copy(),
            logical=self.state[self.n:].copy(),
        )
        if status is not LpStatus.OPTIMAL or pi is None or d is None:
            return LpSolution(
                status=status,
                objective_value=float("nan"),
                primal=primal,
                dual=np.zeros(self.m),
                reduced_costs=np.zeros(self.n),
                row_activity=activity,
                iterations=self.iterations,
                basis=basis if status not in (LpStatus.ITER_LIMIT, LpStatus.TIME_LIMIT) else None,
            )

        obj = float(self.model.objective @ primal)
        nonbasic = self.state != Basis.BASIC
        dual_obj = float(d[nonbasic] @ self.x[nonbasic])
        residual = self.model.max_violation(primal)
        gap = abs(obj - dual_obj)
        if residual > self.opts.feasibility_tol or gap > 1e-6 * (1.0 + abs(obj)):
            logger.warning(
                "LP optimality certificate outside tolerance",
                residual=residual,
                duality_gap=gap,
                rows=self.m,
                cols=self.n,
            )
        return LpSolution(
            status=status,
            objective_value=obj,
            primal=primal,
            dual=pi.copy(),
            reduced_costs=d[: self.n].copy(),
            row_activity=activity,
            iterations=self.iterations,
            dual_objective=dual_obj,
            basis=basis,
        )


def lp_solve(
    model: LpModel,
    warm_start: Optional[Basis] = None,
    options: Optional[SimplexOptions] = None,
) -> LpSolution:
    """
    Solve ``model`` with the bounded-variable primal simplex.

    A warm-start basis that does not fit the model (wrong shape, wrong number
    of basic columns, singular) is silently replaced by the slack basis.
    The result is deterministic for identical inputs.
    """
    solver = _BoundedSimplex(model, options or SimplexOptions())
    solution = solver.run(warm_start)
    logger.debug(
        "LP solved",
        status=solution.status.value,
        objective=solution.objective_value,
        iterations=solution.iterations,
        rows=model.num_rows,
        cols=model.num_vars,
    )
    return solution
