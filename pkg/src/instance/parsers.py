"""
Instance file parsers.

- OR-Library p-median graphs: header "n |E| p", then one "u v w" line per edge.
- TSPLIB coordinate files: "KEY : VALUE" header, NODE_COORD_SECTION, EOF.
- Explicit distance matrices in YAML (used for the shipped example fixtures).
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import structlog
import yaml
from pydantic import BaseModel, Field, ValidationError

from .models import (
    CoordSpec,
    Edge,
    EdgeWeightType,
    GraphSpec,
    InstanceError,
    InstanceParseError,
)

logger = structlog.get_logger()


# =============================================================================
# OR-Library p-median
# =============================================================================

def _parse_ints(tokens: List[str], lineno: int, expected: int, what: str) -> List[int]:
    if len(tokens) != expected:
        raise InstanceParseError(
            f"malformed {what}: expected {expected} integers, found {len(tokens)}",
            lineno,
        )
    try:
        return [int(tok) for tok in tokens]
    except ValueError as e:
        raise InstanceParseError(f"malformed {what}: {' '.join(tokens)!r}", lineno) from e


def parse_pmed(text: str) -> GraphSpec:
    """
    Parse an OR-Library p-median file.

    Blank lines are skipped. Line numbers in errors refer to physical lines of
    the input (1-based).

    Raises:
        InstanceParseError: malformed header or edge line, vertex id out of
            range, negative weight, or an edge count different from the header
    """
    lines = [(no, line.split()) for no, line in enumerate(text.splitlines(), start=1)]
    lines = [(no, tokens) for no, tokens in lines if tokens]
    if not lines:
        raise InstanceParseError("empty file", 1)

    header_no, header = lines[0]
    n, num_edges, p = _parse_ints(header, header_no, 3, "header")
    if n < 1 or num_edges < 0 or p < 1:
        raise InstanceParseError(f"invalid header values n={n}, |E|={num_edges}, p={p}", header_no)

    edges: List[Edge] = []
    for lineno, tokens in lines[1:]:
        if len(edges) == num_edges:
            raise InstanceParseError(f"more edge lines than the {num_edges} declared", lineno)
        u, v, w = _parse_ints(tokens, lineno, 3, "edge line")
        if not (1 <= u <= n and 1 <= v <= n):
            raise InstanceParseError(f"vertex id out of range: ({u}, {v}) with n={n}", lineno)
        if w < 0:
            raise InstanceParseError(f"negative weight {w} on edge ({u}, {v})", lineno)
        edges.append((u, v, w))

    if len(edges) != num_edges:
        last_line = lines[-1][0]
        raise InstanceParseError(
            f"expected {num_edges} edges, found {len(edges)}",
            last_line,
        )

    logger.debug("Parsed p-median graph", n=n, edges=num_edges, p=p)
    return GraphSpec(n=n, edges=tuple(edges), p=p)


# =============================================================================
# TSPLIB
# =============================================================================

_SECTION_KEYWORDS = {
    "NODE_COORD_SECTION",
    "DISPLAY_DATA_SECTION",
    "EDGE_WEIGHT_SECTION",
    "DEPOT_SECTION",
    "DEMAND_SECTION",
    "TOUR_SECTION",
    "FIXED_EDGES_SECTION",
}


def _split_key_value(line: str) -> Tuple[str, str]:
    if ":" in line:
        key, value = line.split(":", 1)
    else:
        parts = line.split(None, 1)
        key, value = parts[0], (parts[1] if len(parts) > 1 else "")
    return key.strip().upper(), value.strip()


def parse_tsplib(text: str) -> CoordSpec:
    """
    Parse the TSPLIB subset used by the Euclidean benchmark set.

    Only EUC_2D and ATT edge weight types are accepted; both are later
    evaluated as exact Euclidean distances.
    """
    header: Dict[str, str] = {}
    coords: List[Tuple[float, float]] = []
    in_coords = False
    saw_section = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        upper = line.upper()
        if upper == "EOF":
            break

        first = upper.split()[0].rstrip(":")
        if first in _SECTION_KEYWORDS:
            in_coords = first == "NODE_COORD_SECTION"
            saw_section = saw_section or in_coords
            if not in_coords and saw_section:
                # Trailing sections (display data, tours) are irrelevant here.
                break
            continue

        if in_coords:
            tokens = line.split()
            if len(tokens) != 3:
                raise InstanceParseError(f"malformed coordinate line {line!r}", lineno)
            try:
                coords.append((float(tokens[1]), float(tokens[2])))
            except ValueError as e:
                raise InstanceParseError(f"malformed coordinate line {line!r}", lineno) from e
            continue

        key, value = _split_key_value(line)
        header[key] = value

    if "DIMENSION" not in header:
        raise InstanceParseError("missing DIMENSION")
    try:
        dimension = int(header["DIMENSION"])
    except ValueError as e:
        raise InstanceParseError(f"invalid DIMENSION {header['DIMENSION']!r}") from e

    raw_type = header.get("EDGE_WEIGHT_TYPE", "")
    try:
        weight_type = EdgeWeightType(raw_type.upper())
    except ValueError as e:
        raise InstanceParseError(f"unsupported EDGE_WEIGHT_TYPE {raw_type!r}") from e

    if not saw_section:
        raise InstanceParseError("missing NODE_COORD_SECTION")
    if len(coords) != dimension:
        raise InstanceParseError(
            f"point count mismatch: DIMENSION={dimension}, found {len(coords)} coordinates"
        )

    name = header.get("NAME", "")
    logger.debug("Parsed TSPLIB file", name=name, dimension=dimension, edge_weight_type=weight_type.value)
    return CoordSpec(
        name=name,
        dimension=dimension,
        coords=tuple(coords),
        edge_weight_type=weight_type,
    )


# =============================================================================
# Explicit matrix (YAML)
# =============================================================================

class MatrixFile(BaseModel):
    """Schema of a YAML distance-matrix file."""
    name: str
    same_locations: bool = True
    description: str = ""
    distances: List[List[float]] = Field(min_length=1)


def parse_matrix(text: str) -> MatrixFile:
    """Parse a YAML distance-matrix document."""
    try:
        raw: Optional[object] = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise InstanceParseError(f"invalid YAML: {e}") from e
    if not isinstance(raw, dict):
        raise InstanceParseError("matrix file must be a YAML mapping")
    try:
        parsed = MatrixFile.model_validate(raw)
    except ValidationError as e:
        raise InstanceParseError(f"invalid matrix file: {e}") from e
    widths = {len(row) for row in parsed.distances}
    if len(widths) != 1:
        raise InstanceError("distance matrix rows have different lengths")
    return parsed
