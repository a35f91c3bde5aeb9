"""
Tests for alpha-distances, objective evaluation and the brute-force oracle.

Run with: pytest tests/test_core.py -v
"""

import math
from itertools import combinations

import numpy as np
import pytest

from src.core.brute_force import all_optimal_sets, brute_force_opt
from src.core.models import BudgetExceededError, CoreError, Solution
from src.core.objective import (
    alpha_closest_set,
    alpha_distance,
    alpha_distances,
    check_subset_budget,
    enumerate_alpha_distances,
    evaluate,
    objective,
    subset_array,
)
from src.instance.models import Instance
from tests.conftest import random_instance, random_metric_instance


class TestAlphaDistance:
    def test_example3_sum_of_two(self, example3):
        assert alpha_distance(example3, {0, 1}, 2, 2) == 3.0

    def test_example1_customer_one(self, example1):
        assert alpha_distance(example1, {1, 2, 3}, 0, 2) == 2.0

    def test_self_distance(self, example1):
        assert alpha_distance(example1, {2}, 2, 1) == 0.0

    def test_too_few_facilities(self, example3):
        with pytest.raises(CoreError, match="need at least alpha=3 open facilities, got 2"):
            alpha_distance(example3, {0, 1}, 0, 3)

    def test_index_out_of_range(self, example3):
        with pytest.raises(CoreError, match="out of range"):
            alpha_distance(example3, {0, 7}, 0, 1)

    def test_vector_matches_scalar(self, example2):
        P = {0, 2, 3, 5}
        vec = alpha_distances(example2, P, 2)
        for i in range(example2.n):
            assert vec[i] == pytest.approx(alpha_distance(example2, P, i, 2))

    def test_monotone_in_open_set(self):
        inst = random_instance(8, seed=3)
        small = {0, 2, 5}
        large = small | {1, 7}
        for alpha in (1, 2, 3):
            for i in range(inst.n):
                assert alpha_distance(inst, large, i, alpha) <= alpha_distance(inst, small, i, alpha)


class TestObjective:
    def test_example1(self, example1):
        assert objective(example1, {1, 2, 3}, 2) == 2.0

    def test_example3(self, example3):
        assert objective(example3, {0, 2}, 2) == 2.0

    def test_all_open_alpha_one(self, example2):
        assert objective(example2, range(example2.m), 1) == 0.0

    def test_example1_alpha_three(self, example1):
        assert objective(example1, {1, 2, 3}, 3) == pytest.approx(2.0 + math.sqrt(2.0))

    def test_evaluate_builds_solution(self, example3):
        sol = evaluate(example3, [2, 0], 2)
        assert sol.open == frozenset({0, 2})
        assert sol.value == 2.0
        assert sol.to_dict() == {"open": [1, 3], "value": 2.0}


class TestAlphaClosestSet:
    def test_unit_distances_win(self, example1):
        assert alpha_closest_set(example1, {1, 2, 3}, 0, 2) == frozenset({1, 3})

    def test_ties_prefer_lowest_id(self):
        inst = Instance(name="flat", d=np.full((1, 4), 5.0), same_locations=False)
        assert alpha_closest_set(inst, {0, 1, 2, 3}, 0, 2) == frozenset({0, 1})

    def test_only_subset(self, example3):
        assert alpha_closest_set(example3, {0, 2}, 1, 2) == frozenset({0, 2})


class TestEnumeration:
    def test_example3(self, example3):
        assert enumerate_alpha_distances(example3, 2) == [1.0, 2.0, 3.0]

    def test_alpha_one_is_unique_entries(self, example2):
        expected = sorted(set(np.round(example2.d.ravel(), 12)))
        values = enumerate_alpha_distances(example2, 1)
        assert values == pytest.approx(expected)

    def test_single_subset(self):
        inst = Instance(name="one", d=np.array([[2.0, 5.0]]), same_locations=False)
        assert enumerate_alpha_distances(inst, 2) == [7.0]

    def test_strictly_increasing(self):
        values = enumerate_alpha_distances(random_metric_instance(9, seed=1, integral=False), 3)
        assert all(b - a > 1e-9 for a, b in zip(values, values[1:]))

    def test_budget(self, example2):
        with pytest.raises(BudgetExceededError, match="exceeds the budget of 10"):
            enumerate_alpha_distances(example2, 3, budget=10)

    def test_check_subset_budget_returns_count(self):
        assert check_subset_budget(6, 3, budget=100) == 20

    def test_subset_array_order(self):
        subsets = subset_array(4, 2)
        assert subsets.shape == (6, 2)
        assert subsets[0].tolist() == [0, 1]
        assert subsets[-1].tolist() == [2, 3]


class TestBruteForce:
    def test_example1(self, example1):
        value, sol = brute_force_opt(example1, 3, 2)
        assert value == 2.0
        assert sol.open == frozenset({0, 1, 2})

    def test_example3(self, example3):
        value, sol = brute_force_opt(example3, 2, 2)
        assert value == 2.0
        assert sol.open == frozenset({0, 2})
        assert all_optimal_sets(example3, 2, 2) == [(0, 2)]

    def test_p_equals_m(self, example2):
        value, _ = brute_force_opt(example2, 6, 2)
        assert value == objective(example2, range(6), 2)

    def test_matches_naive_enumeration(self):
        for seed in range(5):
            inst = random_instance(7, seed=seed)
            for p, alpha in ((2, 1), (3, 2), (4, 3)):
                naive = min(objective(inst, P, alpha) for P in combinations(range(inst.m), p))
                value, sol = brute_force_opt(inst, p, alpha)
                assert value == naive
                assert objective(inst, sol.open, alpha) == value

    def test_facility_guard(self):
        with pytest.raises(BudgetExceededError, match="brute force limited"):
            brute_force_opt(random_instance(17, seed=0), 2, 1)

    def test_subset_guard(self, example1):
        with pytest.raises(BudgetExceededError, match="exceeds --max-subsets 3"):
            brute_force_opt(example1, 2, 1, max_subsets=3)

    def test_alpha_above_p(self, example1):
        with pytest.raises(CoreError, match="alpha must be in"):
            brute_force_opt(example1, 2, 3)


class TestSolution:
    def test_empty_open_set(self):
        with pytest.raises(CoreError, match="at least one open facility"):
            Solution(open=frozenset(), value=0.0)

    def test_sort_key(self):
        a = Solution(open=frozenset({2, 0}), value=1.0)
        b = Solution(open=frozenset({1, 3}), value=1.0)
        assert min([b, a], key=Solution.sort_key) is a
