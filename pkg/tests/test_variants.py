"""
Tests for the p-center family evaluators and the ordering between their
optima.

Run with: pytest tests/test_variants.py -v
"""

import math

import numpy as np
import pytest

from src.core.brute_force import brute_force_variant_opt
from src.core.models import CoreError, VariantKind, VariantTag
from src.core.variants import variant_value
from src.instance.models import Instance
from tests.conftest import random_metric_instance

PCP = VariantKind(VariantTag.PCP)
PNCP = VariantKind(VariantTag.PNCP)


def anpcp(alpha: int) -> VariantKind:
    return VariantKind(VariantTag.ANPCP, alpha)


def paccp(alpha: int) -> VariantKind:
    return VariantKind(VariantTag.PACCP, alpha)


class TestVariantValue:
    def test_example1_alpha_neighbor(self, example1):
        assert variant_value(example1, {1, 2, 3}, anpcp(3)) == pytest.approx(math.sqrt(2.0))

    def test_example1_p_next(self, example1):
        assert variant_value(example1, {1, 2, 3}, PNCP) == 2.0

    def test_example2_alpha_neighbor(self, example2):
        assert variant_value(example2, {0, 1, 3, 5}, anpcp(3)) == 4.0

    def test_paccp_matches_objective(self, example3):
        assert variant_value(example3, {0, 2}, paccp(2)) == 2.0

    def test_requires_same_locations(self):
        inst = Instance(name="r", d=np.ones((2, 3)), same_locations=False)
        with pytest.raises(CoreError, match="requires customers and facilities"):
            variant_value(inst, {0, 1}, PNCP)

    def test_pncp_needs_two(self, example3):
        with pytest.raises(CoreError, match="at least two open facilities"):
            variant_value(example3, {1}, PNCP)

    def test_invalid_alpha(self):
        with pytest.raises(CoreError, match="alpha must be >= 1"):
            VariantKind(VariantTag.ANPCP, 0)

    def test_str(self):
        assert str(anpcp(2)) == "ANPCP[alpha=2]"
        assert str(PNCP) == "PNCP"


class TestExampleOptima:
    def test_example1(self, example1):
        assert brute_force_variant_opt(example1, 3, anpcp(3)) == pytest.approx(math.sqrt(2.0))
        assert brute_force_variant_opt(example1, 3, PNCP) == 2.0
        assert brute_force_variant_opt(example1, 3, paccp(2)) == 2.0

    def test_example2(self, example2):
        assert brute_force_variant_opt(example2, 4, anpcp(3)) == 4.0
        assert brute_force_variant_opt(example2, 4, PNCP) == 2.0
        assert brute_force_variant_opt(example2, 4, paccp(2)) == 2.0

    def test_example3_p_center(self, example3):
        assert brute_force_variant_opt(example3, 2, PCP) == 1.0


class TestOrdering:
    """Optimum ordering on metric instances with a zero diagonal."""

    @pytest.mark.parametrize("seed", range(30))
    def test_ordering(self, seed):
        n = 6 + seed % 3
        p = 2 + seed % 2
        inst = random_metric_instance(n, seed=100 + seed)
        assert inst.satisfies_triangle_inequality()
        opt = lambda kind: brute_force_variant_opt(inst, p, kind)
        tol = 1e-9

        pcp, pncp = opt(PCP), opt(PNCP)
        an = {a: opt(anpcp(a)) for a in range(1, p + 1)}
        ac = {a: opt(paccp(a)) for a in range(1, p + 1)}

        assert pcp <= pncp + tol
        for a in range(1, p + 1):
            assert pcp <= an[a] + tol
            assert an[a] <= ac[a] + tol
            for b in range(a, p + 1):
                assert an[a] <= an[b] + tol
                assert ac[a] <= ac[b] + tol
        assert an[2] <= pncp + tol
