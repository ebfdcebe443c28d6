"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from allnorms_cc.core.clustering import Clustering
from allnorms_cc.core.graph import CorrelationGraph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 10) -> CorrelationGraph:
    """Arbitrary complete signed graphs on up to ``max_n`` vertices."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    signs = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return CorrelationGraph.from_edges(n, [pair for pair, positive in zip(pairs, signs) if positive])


@st.composite
def graphs_with_clusterings(draw, max_n: int = 10):
    graph = draw(graphs(max_n=max_n))
    labels = draw(st.lists(st.integers(min_value=0, max_value=graph.n - 1), min_size=graph.n, max_size=graph.n))
    return graph, Clustering.from_labels(labels)
