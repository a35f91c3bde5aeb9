"""
Distance-matrix construction and file loading.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

import numpy as np
import structlog
from scipy.spatial.distance import cdist

from .models import (
    CoordSpec,
    GraphSpec,
    Instance,
    InstanceError,
    InstanceFormat,
)
from .parsers import parse_matrix, parse_pmed, parse_tsplib

logger = structlog.get_logger()


def floyd_warshall(weights: np.ndarray) -> np.ndarray:
    """
    All-pairs shortest paths on a dense weight matrix (inf = no edge).

    One vectorised relaxation per intermediate vertex.
    """
    dist = np.array(weights, dtype=np.float64, copy=True)
    n = dist.shape[0]
    for k in range(n):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    return dist


def build_graph_instance(spec: GraphSpec, name: str = "") -> Instance:
    """
    Shortest-path instance of an undirected weighted graph (I = J = V).

    Duplicate edges keep the last weight read; self-loops are ignored.

    Raises:
        InstanceError: the graph is disconnected
    """
    n = spec.n
    weights = np.full((n, n), np.inf)
    for u, v, w in spec.edges:
        if u == v:
            continue
        weights[u - 1, v - 1] = w
        weights[v - 1, u - 1] = w
    np.fill_diagonal(weights, 0.0)

    dist = floyd_warshall(weights)

    unreachable = np.argwhere(~np.isfinite(dist))
    if unreachable.size:
        i, j = (int(k) + 1 for k in unreachable[0])
        raise InstanceError(f"unreachable pair ({i}, {j}): graph is disconnected")

    if not np.all(dist == np.round(dist)):
        raise InstanceError("shortest-path distances of an integer graph are not integral")

    logger.debug("Built graph instance", name=name, n=n, edges=len(spec.edges))
    return Instance(name=name, d=dist, same_locations=True)


def build_euclidean_instance(spec: CoordSpec, name: Optional[str] = None) -> Instance:
    """
    Exact (unrounded) Euclidean instance for EUC_2D and ATT coordinates.

    TSPLIB rounding conventions are not applied.
    """
    if spec.dimension < 2:
        raise InstanceError("a Euclidean instance needs at least 2 points")
    points = np.asarray(spec.coords, dtype=np.float64)
    dist = cdist(points, points, metric="euclidean")
    np.fill_diagonal(dist, 0.0)
    label = spec.name if name is None else name
    logger.debug("Built Euclidean instance", name=label, n=spec.dimension)
    return Instance(name=label, d=dist, same_locations=True)


def load_instance(path: Union[str, Path], fmt: Union[str, InstanceFormat]) -> Instance:
    """
    Read and build an instance from disk.

    The instance name is the file stem for p-median graphs and the NAME entry
    (falling back to the stem) for TSPLIB and matrix files.
    """
    path = Path(path)
    fmt = InstanceFormat(fmt)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceError(f"cannot read instance file {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise InstanceError(f"instance file {path} is not UTF-8 text: {e}") from e

    if fmt is InstanceFormat.PMED:
        return build_graph_instance(parse_pmed(text), name=path.stem)
    if fmt is InstanceFormat.TSPLIB:
        spec = parse_tsplib(text)
        return build_euclidean_instance(spec, name=spec.name or path.stem)

    matrix = parse_matrix(text)
    return Instance(
        name=matrix.name or path.stem,
        d=np.asarray(matrix.distances, dtype=np.float64),
        same_locations=matrix.same_locations,
    )
