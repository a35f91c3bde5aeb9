"""
Tests for instance parsing and distance-matrix construction.

Run with: pytest tests/test_instance.py -v
"""

import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from src.instance.builders import (
    build_euclidean_instance,
    build_graph_instance,
    floyd_warshall,
    load_instance,
)
from src.instance.models import CoordSpec, GraphSpec, Instance, InstanceError, InstanceParseError
from src.instance.parsers import parse_matrix, parse_pmed, parse_tsplib

PMED_SMALL = """\
4 4 2
1 2 3
2 3 4
3 4 5
1 4 20
"""

TSP_SMALL = """\
NAME : square
TYPE : TSP
DIMENSION : 4
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0 0
2 3 0
3 3 4
4 0 4
EOF
"""


class TestParsePmed:
    def test_parses_header_and_edges(self):
        spec = parse_pmed(PMED_SMALL)
        assert spec.n == 4
        assert spec.p == 2
        assert spec.edges[0] == (1, 2, 3)
        assert len(spec.edges) == 4

    def test_blank_lines_skipped(self):
        spec = parse_pmed("\n" + PMED_SMALL.replace("\n", "\n\n"))
        assert len(spec.edges) == 4

    def test_edge_count_mismatch(self):
        with pytest.raises(InstanceParseError, match="expected 5 edges, found 4"):
            parse_pmed(PMED_SMALL.replace("4 4 2", "4 5 2"))

    def test_vertex_out_of_range_reports_line(self):
        with pytest.raises(InstanceParseError, match="line 3: vertex id out of range") as info:
            parse_pmed(PMED_SMALL.replace("2 3 4", "2 9 4"))
        assert info.value.line == 3

    def test_malformed_header(self):
        with pytest.raises(InstanceParseError, match="malformed header"):
            parse_pmed("4 4\n1 2 3\n")

    def test_empty_file(self):
        with pytest.raises(InstanceParseError, match="empty file"):
            parse_pmed("")


class TestParseTsplib:
    def test_parses_coordinates(self):
        spec = parse_tsplib(TSP_SMALL)
        assert spec.name == "square"
        assert spec.dimension == 4
        assert spec.coords[2] == (3.0, 4.0)

    def test_unsupported_weight_type(self):
        with pytest.raises(InstanceParseError, match="unsupported EDGE_WEIGHT_TYPE"):
            parse_tsplib(TSP_SMALL.replace("EUC_2D", "GEO"))

    def test_dimension_mismatch(self):
        with pytest.raises(InstanceParseError, match="point count mismatch"):
            parse_tsplib(TSP_SMALL.replace("DIMENSION : 4", "DIMENSION : 5"))

    def test_missing_coord_section(self):
        with pytest.raises(InstanceParseError, match="missing NODE_COORD_SECTION"):
            parse_tsplib("NAME : x\nDIMENSION : 0\nEDGE_WEIGHT_TYPE : EUC_2D\nEOF\n")


class TestParseMatrix:
    def test_rejects_ragged_rows(self):
        with pytest.raises(InstanceError, match="different lengths"):
            parse_matrix("name: bad\ndistances:\n  - [0, 1]\n  - [1]\n")

    def test_rejects_non_mapping(self):
        with pytest.raises(InstanceParseError, match="must be a YAML mapping"):
            parse_matrix("- 1\n- 2\n")


class TestInstance:
    def test_square_requires_zero_diagonal(self):
        with pytest.raises(InstanceError, match="zero diagonal"):
            Instance(name="x", d=np.ones((2, 2)))

    def test_rejects_negative(self):
        with pytest.raises(InstanceError, match="non-negative"):
            Instance(name="x", d=np.array([[1.0, -1.0]]), same_locations=False)

    def test_matrix_is_read_only(self, example3):
        with pytest.raises(ValueError):
            example3.d[0, 0] = 5.0

    def test_integral_flag(self, example1, example3):
        assert example3.integral
        assert not example1.integral

    def test_rectangular_instance(self):
        inst = Instance(name="r", d=np.array([[1.0, 2.0, 3.0]]), same_locations=False)
        assert (inst.n, inst.m) == (1, 3)


class TestBuilders:
    def test_graph_instance_matches_dijkstra(self):
        inst = build_graph_instance(parse_pmed(PMED_SMALL), name="small")
        weights = np.zeros((4, 4))
        for u, v, w in parse_pmed(PMED_SMALL).edges:
            weights[u - 1, v - 1] = weights[v - 1, u - 1] = w
        expected = dijkstra(csr_matrix(weights), directed=False)
        np.testing.assert_allclose(inst.d, expected)
        assert inst.d[0, 3] == 12.0

    def test_disconnected_graph(self):
        spec = GraphSpec(n=3, edges=((1, 2, 1),), p=1)
        with pytest.raises(InstanceError, match="disconnected"):
            build_graph_instance(spec)

    def test_floyd_warshall_handles_missing_edges(self):
        w = np.array([[0.0, 1.0, np.inf], [1.0, 0.0, 2.0], [np.inf, 2.0, 0.0]])
        assert floyd_warshall(w)[0, 2] == 3.0

    def test_euclidean_is_exact(self):
        inst = build_euclidean_instance(parse_tsplib(TSP_SMALL))
        assert inst.d[0, 2] == pytest.approx(5.0)
        assert inst.d[0, 1] == pytest.approx(3.0)
        assert inst.name == "square"

    def test_euclidean_needs_two_points(self):
        with pytest.raises(InstanceError, match="at least 2 points"):
            build_euclidean_instance(CoordSpec(name="one", dimension=1, coords=((0.0, 0.0),)))


class TestLoadInstance:
    def test_fixture_names(self, example1, example2, example3):
        assert (example1.name, example2.name, example3.name) == ("example1", "example2", "example3")
        assert example2.n == 6

    def test_pmed_uses_file_stem(self, tmp_path):
        path = tmp_path / "pmedx.txt"
        path.write_text(PMED_SMALL)
        assert load_instance(path, "pmed").name == "pmedx"

    def test_missing_file(self, tmp_path):
        with pytest.raises(InstanceError, match="cannot read instance file"):
            load_instance(tmp_path / "nope.tsp", "tsplib")

    def test_binary_file(self, tmp_path):
        path = tmp_path / "blob.yaml"
        path.write_bytes(b"\xff\xfe\x00\x81 not text")
        with pytest.raises(InstanceError, match="not UTF-8"):
            load_instance(path, "matrix")
