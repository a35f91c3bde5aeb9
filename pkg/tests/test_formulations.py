"""
Tests for the LP relaxations (F1), (F2), (F3) and (F3-V).

Run with: pytest tests/test_formulations.py -v
"""

import numpy as np
import pytest

from src.core.models import BudgetExceededError
from src.formulations.f1 import build_f1_relaxation, f1_var_map
from src.formulations.f2 import build_f2_relaxation
from src.formulations.f3 import build_f3_relaxation, f3_var_map, subset_distances
from src.formulations.var_map import (
    FormulationError,
    FormulationKind,
    VarMap,
    check_problem_args,
    default_include_all_linking,
)
from src.lp.model import LpStatus, to_lp_text
from src.lp.simplex import lp_solve
from tests.conftest import highs_value, random_instance, random_metric_instance


def _value(model) -> float:
    sol = lp_solve(model)
    assert sol.status is LpStatus.OPTIMAL
    return sol.objective_value


class TestVarMap:
    def test_f1_layout(self, example3):
        vm = f1_var_map(example3, 2)
        assert vm.num_x == 9
        assert vm.x_index(1, 2) == 5
        assert vm.y_index(0) == 9
        assert vm.z_index == 12
        assert vm.num_vars == 13

    def test_f2_layout(self):
        vm = VarMap(kind=FormulationKind.F2, n=3, m=4, alpha=2)
        assert vm.num_x == 24
        assert vm.x_index(2, 1, layer=1) == 12 + 8 + 1

    def test_f3_layout(self, example3):
        vm = f3_var_map(example3, 2, with_valid=True)
        assert vm.subset_catalog == ((0, 1), (0, 2), (1, 2))
        assert vm.subset_id((2, 0)) == 1
        assert vm.x_index(2, 1) == 7
        assert vm.kind is FormulationKind.F3V

    def test_names_are_one_based(self, example3):
        names = f1_var_map(example3, 2).var_names()
        assert names[0] == "x_1_1"
        assert names[-1] == "z"
        assert f3_var_map(example3, 2, False).var_names()[1] == "x_1_1_3"

    def test_out_of_range(self, example3):
        vm = f1_var_map(example3, 2)
        with pytest.raises(FormulationError, match="customer 3 out of range"):
            vm.x_index(3, 0)
        with pytest.raises(FormulationError, match="facility 5 out of range"):
            vm.y_index(5)

    def test_unknown_subset(self, example3):
        vm = f3_var_map(example3, 2, False)
        with pytest.raises(FormulationError, match="is not an alpha-subset"):
            vm.subset_id((0, 1, 2))

    def test_subset_layout_needs_catalog(self):
        with pytest.raises(FormulationError, match="need a subset catalog"):
            VarMap(kind=FormulationKind.F3, n=2, m=3, alpha=2)

    def test_subset_budget(self, example2):
        with pytest.raises(BudgetExceededError, match="F3 subset catalog"):
            f3_var_map(example2, 3, False, budget=10)


class TestProblemArgs:
    def test_alpha_above_p(self, example3):
        with pytest.raises(FormulationError, match="p=1 must be >= alpha=2"):
            check_problem_args(example3, 1, 2)

    def test_p_at_m(self, example3):
        with pytest.raises(FormulationError, match="p=3 must be < m=3"):
            build_f1_relaxation(example3, 3, 2)

    def test_linking_default(self, example3):
        assert default_include_all_linking(example3, None) is True
        assert default_include_all_linking(example3, False) is False


class TestBuilders:
    def test_f1_rows(self, example3):
        model, vm = build_f1_relaxation(example3, 2, 2)
        # sumy + 3 assign + 9 link + 3 dist
        assert model.num_rows == 16
        assert model.var_hi[vm.y_index(1)] == 1.0
        assert np.isinf(model.var_hi[vm.x_index(0, 0)])
        lean, _ = build_f1_relaxation(example3, 2, 2, include_all_linking=False)
        assert lean.num_rows == 7

    def test_f1_x_upper(self, example3):
        model, vm = build_f1_relaxation(example3, 2, 2, x_upper=1.0)
        assert model.var_hi[vm.x_index(2, 2)] == 1.0

    def test_f1_lp_text(self, example3):
        model, _ = build_f1_relaxation(example3, 2, 2)
        text = to_lp_text(model, "example3")
        assert " sumy: + 1 y_1 + 1 y_2 + 1 y_3 = 2" in text
        assert " dist_1: + 1 x_1_2 + 2 x_1_3 - 1 z <= 0" in text

    def test_subset_distances(self, example3):
        vm = f3_var_map(example3, 2, False)
        np.testing.assert_array_equal(subset_distances(example3, vm), [[1, 2, 3], [1, 2, 1], [3, 2, 1]])

    def test_lifted_coefficients(self, example3):
        model, vm = build_f3_relaxation(example3, 2, 2, lift_lb=2.0)
        dist = next(row for row in model.rows if row.name == "dist_1")
        coefs = dict(zip(dist.indices, dist.coefs))
        assert coefs[vm.x_index(0, 0)] == 2.0
        assert coefs[vm.x_index(0, 1)] == 2.0
        assert coefs[vm.x_index(0, 2)] == 3.0


class TestRelaxationValues:
    def test_example3_values(self, example3):
        f1 = _value(build_f1_relaxation(example3, 2, 2)[0])
        f3 = _value(build_f3_relaxation(example3, 2, 2)[0])
        f3v = _value(build_f3_relaxation(example3, 2, 2, with_valid=True)[0])
        assert f1 == pytest.approx(2.0)
        assert f3v == pytest.approx(2.0)
        assert f3 <= 5.0 / 3.0 + 1e-9

    def test_example1_f1_value_matches_highs(self, example1):
        model, _ = build_f1_relaxation(example1, 3, 2)
        assert _value(model) == pytest.approx(highs_value(model), abs=1e-7)

    @pytest.mark.parametrize("seed", range(30))
    def test_equal_strength(self, seed):
        n = 5 + seed % 4
        inst = random_instance(n, seed=seed) if seed % 2 else random_metric_instance(n, seed=seed)
        alpha = 1 + seed % 3
        p = alpha + seed % 2
        f1 = _value(build_f1_relaxation(inst, p, alpha)[0])
        f2 = _value(build_f2_relaxation(inst, p, alpha)[0])
        f3 = _value(build_f3_relaxation(inst, p, alpha)[0])
        f3v = _value(build_f3_relaxation(inst, p, alpha, with_valid=True)[0])
        assert f2 == pytest.approx(f1, abs=1e-6)
        assert f3v == pytest.approx(f1, abs=1e-6)
        assert f3 <= f3v + 1e-6

    @pytest.mark.parametrize("seed", range(4))
    def test_f1_matches_highs(self, seed):
        inst = random_instance(6, seed=40 + seed)
        model, _ = build_f1_relaxation(inst, 3, 2)
        assert _value(model) == pytest.approx(highs_value(model), abs=1e-6)
