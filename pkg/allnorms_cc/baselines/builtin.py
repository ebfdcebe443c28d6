"""Built-in baselines: Pivot, all singletons and a single cluster."""

import logging
from typing import List, Optional, Sequence

import numpy as np

from ..core.clustering import Clustering
from ..core.errors import InvalidParameterError
from ..core.graph import CorrelationGraph
from .base import ClusteringBaseline


logger = logging.getLogger(__name__)


def singletons(n: int) -> Clustering:
    return Clustering.from_clusters(n, ([u] for u in range(n)))


def one_cluster(n: int) -> Clustering:
    return Clustering.from_clusters(n, [range(n)])


def pivot(graph: CorrelationGraph, seed: int = 0, order: Optional[Sequence[int]] = None) -> Clustering:
    """Pivot: cluster a random unclustered vertex with its unclustered positive neighbours.

    The vertex order is one seeded shuffle; walking it and skipping clustered vertices
    picks each pivot uniformly among the unclustered ones. An explicit ``order``
    replaces the shuffle.
    """
    n = graph.n
    if seed < 0:
        raise InvalidParameterError(f"seed must be non-negative, got {seed}")
    if order is None:
        order = np.random.default_rng(seed).permutation(n).tolist()
    elif sorted(order) != list(range(n)):
        raise InvalidParameterError("pivot order must be a permutation of the vertices")

    clustered = [False] * n
    clusters: List[List[int]] = []
    for u in order:
        if clustered[u]:
            continue
        members = [u] + [v for v in graph.pos_adj[u] if v != u and not clustered[v]]
        for v in members:
            clustered[v] = True
        clusters.append(members)
    return Clustering.from_clusters(n, clusters)


class PivotBaseline(ClusteringBaseline):
    def __init__(self) -> None:
        super().__init__(
            name="pivot",
            description="Random pivot with its unclustered positive neighbours",
            randomized=True,
        )

    def cluster(self, graph: CorrelationGraph, seed: int = 0) -> Clustering:
        return pivot(graph, seed)


class SingletonsBaseline(ClusteringBaseline):
    def __init__(self) -> None:
        super().__init__(name="singletons", description="Every vertex in its own cluster")

    def cluster(self, graph: CorrelationGraph, seed: int = 0) -> Clustering:
        return singletons(graph.n)


class OneClusterBaseline(ClusteringBaseline):
    def __init__(self) -> None:
        super().__init__(name="one_cluster", description="All vertices in one cluster")

    def cluster(self, graph: CorrelationGraph, seed: int = 0) -> Clustering:
        return one_cluster(graph.n)
