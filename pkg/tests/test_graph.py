"""Tests for graph construction, the text format and the named generators."""

import pytest
from hypothesis import given, settings

from allnorms_cc.core.errors import GraphFormatError, InvalidParameterError
from allnorms_cc.core.graph import CorrelationGraph, format_graph, load_graph, save_graph
from allnorms_cc.generators.graph_generator import (
    complete_positive,
    empty_positive,
    generator_names,
    make_graph,
    neg_matching,
    random_graph,
    regular_circulant,
    star,
)
from tests.strategies import graphs


@pytest.fixture
def write_file(tmp_path):
    """Write text to a fresh file and return its path."""
    def _write(text: str, name: str = "graph.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


class TestCorrelationGraph:
    """Test the graph type and its conventions."""

    def test_self_loops_are_added(self):
        graph = CorrelationGraph.from_edges(3, [(0, 1)])
        assert graph.pos_adj == ((0, 1), (0, 1), (2,))
        assert graph.degree(2) == 1
        assert graph.loop_free_degree(0) == 1

    def test_duplicate_edges_merge(self):
        graph = CorrelationGraph.from_edges(2, [(0, 1), (1, 0), (0, 1)])
        assert graph.num_positive_edges == 1
        assert graph.num_negative_edges == 0

    def test_rejects_bad_edges(self):
        with pytest.raises(InvalidParameterError):
            CorrelationGraph.from_edges(3, [(0, 3)])
        with pytest.raises(InvalidParameterError):
            CorrelationGraph.from_edges(3, [(1, 1)])
        with pytest.raises(InvalidParameterError):
            CorrelationGraph.from_edges(0, [])

    def test_signs(self):
        graph = star(4)
        assert graph.is_positive(0, 3)
        assert graph.is_positive(2, 2)
        assert not graph.is_positive(1, 2)
        assert list(graph.positive_edges()) == [(0, 1), (0, 2), (0, 3)]

    def test_regularity(self):
        assert regular_circulant(6, 2).is_regular
        assert complete_positive(4).is_regular
        assert not star(4).is_regular
        assert star(4).max_loop_free_degree == 3

    @given(graphs())
    @settings(max_examples=100, deadline=None)
    def test_neighborhood_intersections_cover_n(self, graph):
        """The four positive/negative intersections partition V, also for u == v."""
        for u in range(graph.n):
            for v in range(graph.n):
                assert sum(graph.neighborhood_intersections(u, v)) == graph.n

    @given(graphs())
    @settings(max_examples=100, deadline=None)
    def test_symmetric_with_self_loops(self, graph):
        for u, row in enumerate(graph.pos_adj):
            assert u in row
            assert list(row) == sorted(row)
            for v in row:
                assert graph.is_positive(v, u)


class TestGraphFiles:
    """Test the line-oriented graph format."""

    def test_load_small_graph(self, write_file):
        graph = load_graph(write_file("n 3\n0 1\n0 2\n"))
        assert graph.pos_adj == ((0, 1, 2), (0, 1), (0, 2))

    def test_load_single_vertex(self, write_file):
        graph = load_graph(write_file("n 1\n"))
        assert graph.pos_adj == ((0,),)

    def test_comments_blank_lines_and_duplicates(self, write_file):
        graph = load_graph(write_file("# a star\n\nn 3\n0 1\n# again\n0 1\n2 0\n"))
        assert graph == star(3)

    @pytest.mark.parametrize("text, line", [
        ("0 1\n", 1),
        ("n three\n", 1),
        ("n 3\n0 3\n", 2),
        ("n 3\n0 1\n1 1\n", 3),
        ("n 3\n0 x\n", 2),
        ("n 3\n0 1 2\n", 2),
    ])
    def test_parse_errors_report_line(self, write_file, text, line):
        with pytest.raises(GraphFormatError) as exc_info:
            load_graph(write_file(text))
        assert exc_info.value.line == line
        assert f"line {line}" in str(exc_info.value)

    def test_missing_header(self, write_file):
        with pytest.raises(GraphFormatError):
            load_graph(write_file("# only a comment\n"))

    def test_non_utf8_bytes(self, tmp_path):
        path = tmp_path / "binary.txt"
        path.write_bytes(b"n 3\n0 1\n\xff\xfe 2\n")
        with pytest.raises(GraphFormatError) as exc_info:
            load_graph(path)
        assert exc_info.value.line == 3

    def test_save_star(self, tmp_path):
        path = tmp_path / "star3.txt"
        save_graph(star(3), path)
        assert path.read_text(encoding="utf-8").splitlines() == ["n 3", "0 1", "0 2"]

    def test_save_no_edges(self):
        assert format_graph(empty_positive(2)) == "n 2\n"

    def test_round_trip(self, tmp_path):
        for seed in range(100):
            graph = random_graph(1 + seed % 15, 0.3, seed)
            path = tmp_path / f"g{seed}.txt"
            save_graph(graph, path)
            assert load_graph(path) == graph


class TestGenerators:
    """Test the named instance families."""

    def test_star(self):
        graph = star(5)
        assert graph.num_positive_edges == 4
        assert graph.degree(0) == 5
        assert all(graph.degree(leaf) == 2 for leaf in range(1, 5))

    def test_complete_and_empty(self):
        assert complete_positive(5).num_positive_edges == 10
        assert empty_positive(5).num_positive_edges == 0
        assert empty_positive(5).num_negative_edges == 10

    def test_neg_matching(self):
        graph = neg_matching(6)
        assert graph.num_positive_edges == 12
        assert not graph.is_positive(0, 3)
        assert not graph.is_positive(2, 5)
        assert graph.is_positive(0, 1)

    def test_regular_circulant(self):
        graph = regular_circulant(4, 2)
        assert all(graph.degree(u) == 3 for u in range(4))
        assert list(graph.positive_edges()) == [(0, 1), (0, 3), (1, 2), (2, 3)]

    def test_random_is_deterministic(self):
        assert random_graph(100, 0.1, 7) == random_graph(100, 0.1, 7)
        assert random_graph(100, 0.1, 7) != random_graph(100, 0.1, 8)

    def test_random_extremes(self):
        assert random_graph(6, 0.0, 1) == empty_positive(6)
        assert random_graph(6, 1.0, 1) == complete_positive(6)

    @pytest.mark.parametrize("kind, params", [
        ("neg_matching", {"n": 5}),
        ("regular_circulant", {"n": 6, "degree": 3}),
        ("regular_circulant", {"n": 4, "degree": 4}),
        ("random", {"n": 4, "q": 1.5, "seed": 0}),
        ("star", {"n": 0}),
        ("star", {"n": 3, "q": 0.5}),
        ("hypercube", {"n": 8}),
    ])
    def test_invalid_parameters(self, kind, params):
        with pytest.raises(InvalidParameterError):
            make_graph(kind, **params)

    def test_make_graph_accepts_hyphens(self):
        assert make_graph("neg-matching", n=4) == neg_matching(4)
        assert make_graph("random", n=10, q=0.5, seed=3) == random_graph(10, 0.5, 3)

    def test_generator_names(self):
        assert set(generator_names()) == {
            "star", "complete_positive", "empty_positive", "neg_matching", "random", "regular_circulant",
        }
