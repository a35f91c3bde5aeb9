"""
Objective evaluators for the p-center family.

- PCP: max over customers of the closest open facility
- ANPCP: max over non-open locations of the alpha-th closest open facility
- PNCP: closest open facility plus that facility's nearest open alternative
- PACCP: sum of the alpha closest open facilities (the problem solved here)
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from ..instance.models import Instance
from .models import CoreError, VariantKind, VariantTag, as_facility_tuple
from .objective import objective


def _anpcp_value(inst: Instance, cols: np.ndarray, alpha: int) -> float:
    if cols.size < alpha:
        raise CoreError(f"ANPCP needs at least alpha={alpha} open facilities")
    customers = np.setdiff1d(np.arange(inst.n), cols)
    if customers.size == 0:
        return 0.0
    block = np.sort(inst.d[np.ix_(customers, cols)], axis=1)
    return float(block[:, alpha - 1].max())


def _pncp_value(inst: Instance, cols: np.ndarray) -> float:
    if cols.size < 2:
        raise CoreError("PNCP needs at least two open facilities")
    worst = 0.0
    for i in range(inst.n):
        dist = inst.d[i, cols]
        # argmin returns the first minimum: lowest facility id among ties
        k = int(np.argmin(dist))
        j_closest = cols[k]
        others = np.delete(cols, k)
        value = float(dist[k] + inst.d[j_closest, others].min())
        worst = max(worst, value)
    return worst


def variant_value(inst: Instance, P: Iterable[int], kind: VariantKind) -> float:
    """
    Objective of a p-center variant for a fixed open set P.

    Raises:
        CoreError: ANPCP/PNCP on an instance with distinct customer and
            facility sets, or too few open facilities
    """
    if kind.requires_same_locations and not inst.same_locations:
        raise CoreError(f"{kind.tag.value} requires customers and facilities at the same locations")
    cols = np.asarray(as_facility_tuple(P), dtype=np.intp)
    if cols.size == 0:
        raise CoreError("empty facility set")

    if kind.tag is VariantTag.PCP:
        return objective(inst, cols, 1)
    if kind.tag is VariantTag.PACCP:
        return objective(inst, cols, kind.alpha)
    if kind.tag is VariantTag.ANPCP:
        return _anpcp_value(inst, cols, kind.alpha)
    return _pncp_value(inst, cols)
