"""Core data types, configuration and the clustering pipeline."""

from .clustering import Clustering
from .config import Config
from .errors import ClusteringError
from .graph import CorrelationGraph
from .semimetric import SparseSemiMetric

__all__ = ["Clustering", "ClusteringError", "Config", "CorrelationGraph", "SparseSemiMetric"]
