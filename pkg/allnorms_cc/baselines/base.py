"""Base interface for baseline clustering algorithms."""

from abc import ABC, abstractmethod

from ..core.clustering import Clustering
from ..core.graph import CorrelationGraph


class ClusteringBaseline(ABC):
    """Abstract base class for clusterings the pipeline is compared against."""

    def __init__(self, name: str, description: str, randomized: bool = False):
        self.name = name
        self.description = description
        self.randomized = randomized

    @abstractmethod
    def cluster(self, graph: CorrelationGraph, seed: int = 0) -> Clustering:
        """Cluster ``graph``; deterministic for a fixed seed."""

    def __str__(self) -> str:
        return f"Baseline({self.name}): {self.description}"
