"""Tests for the correlation metric, its adjustment and the triangle checks."""

import pytest
from hypothesis import given, settings

from allnorms_cc.algorithms.metric import (
    adjust_metric,
    check_delta_triangle,
    correlation_distance,
    correlation_metric,
    jaccard_distance,
    singleton_vertices,
)
from allnorms_cc.core.config import AdjustmentConfig
from allnorms_cc.core.errors import InvalidParameterError
from allnorms_cc.core.graph import CorrelationGraph
from allnorms_cc.core.semimetric import SparseSemiMetric
from allnorms_cc.generators.graph_generator import (
    complete_positive,
    empty_positive,
    neg_matching,
    random_graph,
    star,
)
from tests.strategies import graphs


@pytest.fixture
def far_negative_graph():
    """Negative pair (0, 1) with one common neighbour out of five: d = 0.8."""
    return CorrelationGraph.from_edges(5, [(0, 2), (1, 2), (0, 3), (0, 4)])


@pytest.fixture
def threshold_graph():
    """Negative pair (0, 1) with 3 common neighbours out of 10: d is exactly 0.7."""
    edges = [(0, v) for v in (2, 3, 4, 5, 6, 7)] + [(1, v) for v in (2, 3, 4, 8, 9)]
    return CorrelationGraph.from_edges(10, edges)


class TestCorrelationMetric:
    """Test the Jaccard-style correlation metric."""

    def test_jaccard_distance(self):
        assert jaccard_distance(2, 5) == 0.6
        assert jaccard_distance(3, 3) == 0.0

    def test_bad_triangle(self):
        d = correlation_metric(star(3))
        assert d.distance(0, 1) == pytest.approx(1 / 3)
        assert d.distance(0, 2) == pytest.approx(1 / 3)
        assert d.distance(1, 2) == pytest.approx(2 / 3)

    def test_star5(self):
        d = correlation_metric(star(5))
        for leaf in range(1, 5):
            assert d.distance(0, leaf) == 0.6
        assert d.distance(1, 2) == pytest.approx(2 / 3)
        assert d.num_stored == 10

    def test_complete_and_empty(self):
        d = correlation_metric(complete_positive(4))
        assert d.num_stored == 6
        assert all(value == 0.0 for _, _, value in d.stored_pairs())
        assert correlation_metric(empty_positive(4)).num_stored == 0

    @pytest.mark.parametrize("seed", range(6))
    def test_stored_entries_bounded_by_squared_degrees(self, seed):
        graph = random_graph(80, (0.02, 0.1, 0.3)[seed % 3], seed)
        d = correlation_metric(graph)
        assert d.num_stored <= sum(graph.degree(u) ** 2 for u in range(graph.n))

    def test_pairs_without_common_neighbour_are_implicit(self):
        d = correlation_metric(CorrelationGraph.from_edges(4, [(0, 1), (2, 3)]))
        assert d.distance(0, 2) == 1.0
        assert 2 not in d.rows[0]

    @given(graphs(max_n=9))
    @settings(max_examples=100, deadline=None)
    def test_matches_direct_computation(self, graph):
        d = correlation_metric(graph)
        assert d.is_symmetric()
        for u in range(graph.n):
            assert d.distance(u, u) == 0.0
            for v in range(graph.n):
                assert d.distance(u, v) == correlation_distance(graph, u, v)
                if v in d.rows[u]:
                    assert d.rows[u][v] < 1.0


class TestAdjustedMetric:
    """Test round-up and singleton isolation."""

    def test_star5_unchanged(self):
        d = correlation_metric(star(5))
        f = adjust_metric(star(5), d)
        assert f.rows == d.rows

    def test_star9_isolates_every_leaf(self):
        graph = star(9)
        d = correlation_metric(graph)
        assert singleton_vertices(graph, d) == list(range(1, 9))
        f = adjust_metric(graph, d)
        assert f.num_stored == 0

    def test_far_negative_pair_rounded_up(self, far_negative_graph):
        d = correlation_metric(far_negative_graph)
        assert d.distance(0, 1) == pytest.approx(0.8)
        f = adjust_metric(far_negative_graph, d)
        assert f.distance(0, 1) == 1.0
        assert f.distance(0, 2) == d.distance(0, 2)

    def test_threshold_is_inclusive(self, threshold_graph):
        d = correlation_metric(threshold_graph)
        assert d.distance(0, 1) == 0.7
        f = adjust_metric(threshold_graph, d)
        assert f.distance(0, 1) == 0.7

    def test_positive_edges_never_rounded_up(self):
        graph = star(9)
        d = correlation_metric(graph)
        f = adjust_metric(graph, d, AdjustmentConfig(singleton_factor=100.0))
        assert f.distance(0, 1) == d.distance(0, 1) == pytest.approx(7 / 9)
        assert f.distance(1, 2) == pytest.approx(2 / 3)

    def test_custom_threshold(self):
        graph = star(5)
        f = adjust_metric(graph, correlation_metric(graph), AdjustmentConfig(round_up_threshold=0.6))
        assert f.distance(1, 2) == 1.0
        assert f.distance(0, 1) == 0.6

    def test_isolation_uses_unmodified_metric(self):
        graph = star(9)
        d = correlation_metric(graph)
        assert adjust_metric(graph, d, isolated=[]).num_stored == d.num_stored
        assert adjust_metric(graph, d, isolated=singleton_vertices(graph, d)).rows == adjust_metric(graph, d).rows

    @given(graphs(max_n=9))
    @settings(max_examples=100, deadline=None)
    def test_adjusted_never_below_correlation(self, graph):
        d = correlation_metric(graph)
        f = adjust_metric(graph, d)
        assert f.is_symmetric()
        for u in range(graph.n):
            for v, value in f.rows[u].items():
                assert value == d.distance(u, v)


class TestDeltaTriangle:
    """Test the delta-triangle checker."""

    def test_flags_synthetic_violation(self):
        z = SparseSemiMetric.from_pairs(3, {(0, 1): 0.9, (0, 2): 0.1, (1, 2): 0.1})
        assert check_delta_triangle(z, 1.0) == [(0, 1, 2)]
        assert check_delta_triangle(z, 10 / 7) == [(0, 1, 2)]
        assert check_delta_triangle(z, 5.0) == []

    def test_rejects_delta_below_one(self):
        with pytest.raises(InvalidParameterError):
            check_delta_triangle(SparseSemiMetric.constant(3, 0.5), 0.9)

    def test_random_corpus(self):
        """d is a semi-metric and f a 10/7-semi-metric."""
        graphs_ = [random_graph(60, (0.05, 0.2, 0.5)[i % 3], i) for i in range(12)]
        graphs_ += [star(n) for n in (5, 9, 30, 60)] + [neg_matching(n) for n in (4, 10, 60)]
        for graph in graphs_:
            d = correlation_metric(graph)
            f = adjust_metric(graph, d)
            assert check_delta_triangle(d, 1.0) == []
            assert check_delta_triangle(f, 10 / 7) == []
