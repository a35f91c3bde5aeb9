"""
Tests for the LP model and the bounded-variable simplex.

Run with: pytest tests/test_lp.py -v
"""

import numpy as np
import pytest
from scipy.optimize import linprog

from src.lp.model import Basis, LpError, LpModel, LpRow, LpStatus, Relation, to_lp_text
from src.lp.simplex import SimplexOptions, lp_solve


def _model(c, rows, lo=None, hi=None, names=None):
    n = len(c)
    return LpModel(
        num_vars=n,
        objective=np.asarray(c, dtype=float),
        var_lo=np.zeros(n) if lo is None else np.asarray(lo, dtype=float),
        var_hi=np.full(n, np.inf) if hi is None else np.asarray(hi, dtype=float),
        rows=tuple(rows),
        var_names=names,
    )


def _row(coefs, relation, rhs):
    return LpRow.from_dict(dict(enumerate(coefs)), relation, rhs)


def _random_lp(seed: int, n: int = 6, m: int = 5):
    """Feasible, bounded LP with mixed row senses."""
    rng = np.random.default_rng(seed)
    A = rng.integers(-4, 5, size=(m, n)).astype(float)
    x0 = rng.uniform(0.0, 3.0, size=n)
    act = A @ x0
    senses = rng.integers(0, 3, size=m)
    rows = []
    for r in range(m):
        if senses[r] == 0:
            rows.append(_row(A[r], Relation.LE, act[r] + 1.0))
        elif senses[r] == 1:
            rows.append(_row(A[r], Relation.GE, act[r] - 1.0))
        else:
            rows.append(_row(A[r], Relation.EQ, act[r]))
    c = rng.integers(-5, 6, size=n).astype(float)
    lo = np.zeros(n)
    hi = np.full(n, 5.0)
    return _model(c, rows, lo, hi), A, senses, act


def _scipy_value(A, senses, act, c, hi):
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for r, s in enumerate(senses):
        if s == 0:
            A_ub.append(A[r])
            b_ub.append(act[r] + 1.0)
        elif s == 1:
            A_ub.append(-A[r])
            b_ub.append(1.0 - act[r])
        else:
            A_eq.append(A[r])
            b_eq.append(act[r])
    res = linprog(
        c,
        A_ub=np.array(A_ub) if A_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(A_eq) if A_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=[(0.0, h) for h in hi],
        method="highs",
    )
    assert res.status == 0
    return res.fun


class TestLpModel:
    def test_rejects_inverted_bounds(self):
        with pytest.raises(LpError, match="variable 1: lower bound exceeds upper bound"):
            _model([1.0, 1.0], [], lo=[0.0, 2.0], hi=[1.0, 1.0])

    def test_rejects_bad_column(self):
        with pytest.raises(LpError, match="column index 5 out of range"):
            _model([1.0, 1.0], [LpRow((0, 5), (1.0, 1.0), Relation.LE, 1.0)])

    def test_rejects_length_mismatch(self):
        with pytest.raises(LpError, match="differ in length"):
            LpRow((0, 1), (1.0,), Relation.LE, 1.0)

    def test_rejects_infinite_rhs(self):
        with pytest.raises(LpError, match="right-hand side must be finite"):
            _model([1.0], [LpRow((0,), (1.0,), Relation.LE, np.inf)])

    def test_add_rows_is_functional(self):
        base = _model([1.0], [])
        extended = base.add_rows([_row([1.0], Relation.GE, 2.0)])
        assert base.num_rows == 0
        assert extended.num_rows == 1

    def test_row_violation(self):
        row = _row([1.0, 1.0], Relation.LE, 1.0)
        assert row.violation(np.array([1.0, 0.5])) == pytest.approx(0.5)
        assert row.violation(np.array([0.2, 0.3])) == 0.0

    def test_lp_text(self):
        model = _model(
            [0.0, 1.0],
            [LpRow((0, 1), (2.0, -1.0), Relation.LE, 0.0, name="dist_1")],
            hi=[1.0, np.inf],
            names=("x_1_1", "z"),
        )
        text = to_lp_text(model, "tiny")
        assert "Minimize" in text
        assert " obj: + 1 z" in text
        assert " dist_1: + 2 x_1_1 - 1 z <= 0" in text
        assert " 0 <= x_1_1 <= 1" in text
        assert " 0 <= z <= +inf" in text
        assert text.endswith("End\n")


class TestSimplex:
    def test_small_optimum(self):
        # max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> (1.6, 1.2), value 2.8
        model = _model(
            [-1.0, -1.0],
            [_row([1.0, 2.0], Relation.LE, 4.0), _row([3.0, 1.0], Relation.LE, 6.0)],
        )
        sol = lp_solve(model)
        assert sol.status is LpStatus.OPTIMAL
        assert sol.objective_value == pytest.approx(-2.8)
        np.testing.assert_allclose(sol.primal, [1.6, 1.2], atol=1e-9)

    def test_equality_and_bounds(self):
        model = _model([1.0, 2.0], [_row([1.0, 1.0], Relation.EQ, 3.0)], hi=[2.0, 5.0])
        sol = lp_solve(model)
        assert sol.objective_value == pytest.approx(4.0)
        np.testing.assert_allclose(sol.primal, [2.0, 1.0], atol=1e-9)

    def test_free_variable(self):
        model = _model([1.0], [_row([1.0], Relation.GE, -3.0)], lo=[-np.inf], hi=[np.inf])
        assert lp_solve(model).objective_value == pytest.approx(-3.0)

    def test_infeasible(self):
        model = _model([1.0], [_row([1.0], Relation.GE, 2.0)], hi=[1.0])
        assert lp_solve(model).status is LpStatus.INFEASIBLE

    def test_unbounded(self):
        model = _model([-1.0, 0.0], [_row([1.0, -1.0], Relation.LE, 1.0)])
        assert lp_solve(model).status is LpStatus.UNBOUNDED

    def test_no_rows(self):
        sol = lp_solve(_model([1.0, -1.0], [], lo=[1.0, 0.0], hi=[4.0, 2.0]))
        assert sol.objective_value == pytest.approx(-1.0)

    def test_iteration_limit(self):
        model, *_ = _random_lp(1)
        sol = lp_solve(model, options=SimplexOptions(max_iterations=0))
        assert sol.status in (LpStatus.ITER_LIMIT, LpStatus.OPTIMAL)

    def test_interrupt_stops_the_solve(self):
        model = _model(
            [-1.0, -1.0],
            [_row([1.0, 2.0], Relation.LE, 4.0), _row([3.0, 1.0], Relation.LE, 6.0)],
        )
        sol = lp_solve(model, options=SimplexOptions(interrupt=lambda: True))
        assert sol.status is LpStatus.TIME_LIMIT
        assert not sol.is_optimal
        assert sol.basis is None

    def test_idle_interrupt_changes_nothing(self):
        model = _model(
            [-1.0, -1.0],
            [_row([1.0, 2.0], Relation.LE, 4.0), _row([3.0, 1.0], Relation.LE, 6.0)],
        )
        calls = []

        def interrupt():
            calls.append(1)
            return False

        plain = lp_solve(model)
        polled = lp_solve(model, options=SimplexOptions(interrupt=interrupt))
        assert polled.status is LpStatus.OPTIMAL
        assert polled.objective_value == pytest.approx(plain.objective_value)
        assert calls

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_highs(self, seed):
        model, A, senses, act = _random_lp(seed)
        sol = lp_solve(model)
        assert sol.status is LpStatus.OPTIMAL
        expected = _scipy_value(A, senses, act, model.objective, model.var_hi)
        assert sol.objective_value == pytest.approx(expected, abs=1e-6)
        assert model.max_violation(sol.primal) <= 1e-6
        assert sol.dual_objective == pytest.approx(sol.objective_value, abs=1e-6)

    def test_deterministic(self):
        model, *_ = _random_lp(7)
        a, b = lp_solve(model), lp_solve(model)
        np.testing.assert_array_equal(a.primal, b.primal)
        assert a.iterations == b.iterations


class TestWarmStart:
    def test_appended_rows_keep_the_optimum(self):
        model, *_ = _random_lp(3)
        first = lp_solve(model)
        cut = _row(np.ones(model.num_vars), Relation.LE, float(first.primal.sum()) - 0.5)
        extended = model.add_rows([cut])
        warm = lp_solve(extended, warm_start=first.basis.with_rows_appended(1))
        cold = lp_solve(extended)
        assert warm.status is cold.status
        if cold.status is LpStatus.OPTIMAL:
            assert warm.objective_value == pytest.approx(cold.objective_value, abs=1e-6)

    def test_mismatched_basis_falls_back(self):
        model, *_ = _random_lp(4)
        bogus = Basis(structural=np.zeros(2, dtype=np.int8), logical=np.zeros(1, dtype=np.int8))
        assert lp_solve(model, warm_start=bogus).objective_value == pytest.approx(lp_solve(model).objective_value)

    def test_optimal_basis_needs_no_pivots(self):
        model, *_ = _random_lp(5)
        first = lp_solve(model)
        again = lp_solve(model, warm_start=first.basis)
        assert again.iterations == 0
        assert again.objective_value == pytest.approx(first.objective_value)
