"""
Shared fixtures: the three example instances and seeded random instance
factories.
"""

from pathlib import Path
from typing import Callable

import numpy as np
import pytest
from scipy.optimize import linprog

from src.instance.builders import load_instance
from src.instance.models import Instance
from src.lp.model import LpModel

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "data" / "fixtures"


@pytest.fixture(scope="session")
def example1() -> Instance:
    """Unit square; optimum 2 for p=3, alpha=2."""
    return load_instance(FIXTURES / "example1.yaml", "matrix")


@pytest.fixture(scope="session")
def example2() -> Instance:
    return load_instance(FIXTURES / "example2.yaml", "matrix")


@pytest.fixture(scope="session")
def example3() -> Instance:
    """Path 1 - 2 - 3; optimum 2 for p=alpha=2."""
    return load_instance(FIXTURES / "example3.yaml", "matrix")


def random_metric_instance(n: int, seed: int, integral: bool = True) -> Instance:
    """Points in a 20 x 20 grid, Euclidean distances (rounded when integral)."""
    rng = np.random.default_rng(seed)
    points = rng.uniform(0.0, 20.0, size=(n, 2))
    d = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=2)
    if integral:
        d = np.round(d)
        # rounding can break the triangle inequality; close it again
        for k in range(n):
            np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    np.fill_diagonal(d, 0.0)
    return Instance(name=f"metric{n}_{seed}", d=d, same_locations=True)


def random_instance(n: int, seed: int, m: int = None) -> Instance:
    """Non-metric integer distances in [1, 30] with a zero diagonal when square."""
    m = n if m is None else m
    rng = np.random.default_rng(seed)
    d = rng.integers(1, 31, size=(n, m)).astype(np.float64)
    same = n == m
    if same:
        np.fill_diagonal(d, 0.0)
    return Instance(name=f"random{n}x{m}_{seed}", d=d, same_locations=same)


@pytest.fixture
def metric_factory() -> Callable[..., Instance]:
    return random_metric_instance


@pytest.fixture
def random_factory() -> Callable[..., Instance]:
    return random_instance


def highs_value(model: LpModel) -> float:
    """Optimal value of an LpModel by scipy's HiGHS, as an independent oracle."""
    A = model.matrix.toarray()
    lo, hi = model.row_bounds
    ub_rows = np.isfinite(hi) & (lo != hi)
    lb_rows = np.isfinite(lo) & (lo != hi)
    eq_rows = lo == hi
    A_ub = np.vstack([A[ub_rows], -A[lb_rows]])
    b_ub = np.concatenate([hi[ub_rows], -lo[lb_rows]])
    res = linprog(
        model.objective,
        A_ub=A_ub if A_ub.size else None,
        b_ub=b_ub if A_ub.size else None,
        A_eq=A[eq_rows] if eq_rows.any() else None,
        b_eq=lo[eq_rows] if eq_rows.any() else None,
        bounds=[
            (None if not np.isfinite(l) else l, None if not np.isfinite(h) else h)
            for l, h in zip(model.var_lo, model.var_hi)
        ],
        method="highs",
    )
    assert res.status == 0, res.message
    return float(res.fun)
