"""
All-norms correlation clustering.

This package builds the adjusted correlation metric of a complete signed graph,
rounds it into a single clustering that approximates every l_p norm of the
disagreement vector at once, and ships baselines, an exhaustive oracle and a
verification and benchmark harness.
"""

from .algorithms.metric import adjust_metric, check_delta_triangle, correlation_metric
from .algorithms.rounding import kmz_round
from .core.clustering import Clustering
from .core.config import Config
from .core.graph import CorrelationGraph, load_graph, save_graph
from .core.pipeline import AllNormsClusterer, round_pipeline
from .core.semimetric import SparseSemiMetric
from .generators.graph_generator import make_graph

__version__ = "1.0.0"

__all__ = [
    "AllNormsClusterer",
    "Clustering",
    "Config",
    "CorrelationGraph",
    "SparseSemiMetric",
    "adjust_metric",
    "check_delta_triangle",
    "correlation_metric",
    "kmz_round",
    "load_graph",
    "make_graph",
    "round_pipeline",
    "save_graph",
]
