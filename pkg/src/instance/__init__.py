"""
Instance package.

Parsers for OR-Library p-median and TSPLIB files, plus distance-matrix
construction (shortest paths / Euclidean).
"""

from .builders import (
    build_euclidean_instance,
    build_graph_instance,
    floyd_warshall,
    load_instance,
)
from .models import (
    CoordSpec,
    EdgeWeightType,
    GraphSpec,
    Instance,
    InstanceError,
    InstanceFormat,
    InstanceParseError,
)
from .parsers import MatrixFile, parse_matrix, parse_pmed, parse_tsplib

__all__ = [
    "CoordSpec",
    "EdgeWeightType",
    "GraphSpec",
    "Instance",
    "InstanceError",
    "InstanceFormat",
    "InstanceParseError",
    "MatrixFile",
    "build_euclidean_instance",
    "build_graph_instance",
    "floyd_warshall",
    "load_instance",
    "parse_matrix",
    "parse_pmed",
    "parse_tsplib",
]
