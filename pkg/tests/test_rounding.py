"""Tests for ball-growing rounding."""

import pytest
from pydantic import ValidationError

from allnorms_cc.algorithms.metric import adjust_metric, correlation_metric
from allnorms_cc.algorithms.rounding import kmz_round, kmz_round_with_centers
from allnorms_cc.core.config import RoundingParams
from allnorms_cc.core.semimetric import SparseSemiMetric
from allnorms_cc.generators.graph_generator import neg_matching, random_graph, regular_circulant, star


@pytest.fixture
def weighted_metric():
    """Vertices 2 and 3 tie on the largest ball load."""
    return SparseSemiMetric.from_pairs(4, {(2, 3): 0.0, (1, 2): 0.1, (1, 3): 0.1})


class TestKMZRounding:
    """Test center selection, ball membership and tie-breaking."""

    def test_bad_triangle_single_cluster(self):
        clustering, centers = kmz_round_with_centers(correlation_metric(star(3)))
        assert clustering.clusters == ((0, 1, 2),)
        assert centers == [0]

    def test_star5_correlation_metric_gives_singletons(self):
        clustering = kmz_round(correlation_metric(star(5)))
        assert clustering.num_clusters == 5

    def test_constant_metrics(self):
        assert kmz_round(SparseSemiMetric.constant(5, 1.0)).num_clusters == 5
        assert kmz_round(SparseSemiMetric.constant(5, 0.0)).clusters == ((0, 1, 2, 3, 4),)

    def test_largest_load_wins_ties_by_id(self, weighted_metric):
        clustering, centers = kmz_round_with_centers(weighted_metric)
        assert centers == [2, 0]
        assert clustering.clusters == ((1, 2, 3), (0,))
        assert clustering.assignment == (1, 0, 0, 0)

    def test_cluster_radius_is_inclusive(self):
        z = SparseSemiMetric.from_pairs(2, {(0, 1): 0.4})
        assert kmz_round(z).clusters == ((0, 1),)
        assert kmz_round(z, RoundingParams(radius=0.15)).num_clusters == 2

    def test_single_vertex(self):
        assert kmz_round(SparseSemiMetric.constant(1, 1.0)).clusters == ((0,),)

    @pytest.mark.parametrize("seed", range(10))
    def test_lazy_matches_naive(self, seed):
        graph = random_graph(80, (0.05, 0.2, 0.5)[seed % 3], seed)
        f = adjust_metric(graph, correlation_metric(graph))
        lazy = kmz_round_with_centers(f)
        naive = kmz_round_with_centers(f, RoundingParams(naive=True))
        assert lazy == naive

    @pytest.mark.parametrize("graph", [regular_circulant(30, 6), neg_matching(20), star(12)])
    def test_lazy_matches_naive_on_families(self, graph):
        d = correlation_metric(graph)
        assert kmz_round(d) == kmz_round(d, RoundingParams(naive=True))

    @pytest.mark.parametrize("seed", range(10))
    def test_centers_are_far_apart(self, seed):
        graph = random_graph(60, (0.05, 0.2, 0.5)[seed % 3], seed)
        f = adjust_metric(graph, correlation_metric(graph))
        _, centers = kmz_round_with_centers(f)
        for s, first in enumerate(centers):
            for second in centers[s + 1:]:
                assert f.distance(first, second) > 2 * 0.2

    def test_partition_is_valid(self):
        graph = random_graph(50, 0.2, 4)
        clustering = kmz_round(adjust_metric(graph, correlation_metric(graph)))
        members = sorted(v for cluster in clustering.clusters for v in cluster)
        assert members == list(range(50))

    @pytest.mark.parametrize("radius", [0.0, 0.5, -0.1, 0.75])
    def test_radius_validation(self, radius):
        with pytest.raises(ValidationError):
            RoundingParams(radius=radius)
