"""Registry of baseline clusterings."""

import logging
from typing import Dict, List, Optional

from ..core.clustering import Clustering
from ..core.errors import InvalidParameterError
from ..core.graph import CorrelationGraph
from .base import ClusteringBaseline
from .builtin import OneClusterBaseline, PivotBaseline, SingletonsBaseline


logger = logging.getLogger(__name__)


class BaselineManager:
    """Manages and runs baseline clusterings."""

    def __init__(self) -> None:
        self.baselines: Dict[str, ClusteringBaseline] = {}
        self._register_builtin_baselines()

    def _register_builtin_baselines(self) -> None:
        for baseline in (PivotBaseline(), SingletonsBaseline(), OneClusterBaseline()):
            self.register(baseline)

    def register(self, baseline: ClusteringBaseline) -> None:
        """Register a baseline, replacing any with the same name."""
        self.baselines[baseline.name] = baseline
        logger.debug(f"Registered baseline: {baseline.name}")

    def get(self, name: str) -> Optional[ClusteringBaseline]:
        return self.baselines.get(name)

    def list_baselines(self) -> List[str]:
        return list(self.baselines)

    def run(self, name: str, graph: CorrelationGraph, seed: int = 0) -> Clustering:
        baseline = self.get(name)
        if baseline is None:
            raise InvalidParameterError(
                f"unknown baseline {name!r}; choose from {', '.join(self.baselines)}"
            )
        return baseline.cluster(graph, seed)

    def run_all(self, graph: CorrelationGraph, seed: int = 0) -> Dict[str, Clustering]:
        """Run every registered baseline in registration order."""
        return {name: baseline.cluster(graph, seed) for name, baseline in self.baselines.items()}
