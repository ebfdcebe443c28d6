"""Exhaustive optimum over all set partitions, for small instances."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..analyzers.objective import NormLike, as_norm, lp_norm
from ..core.clustering import Clustering
from ..core.errors import InstanceTooLargeError
from ..core.graph import CorrelationGraph
from ..core.types import ExactSummary, NormSpec


logger = logging.getLogger(__name__)

MAX_EXACT_N = 12


@dataclass(frozen=True)
class ExactResult:
    """Best partition found by exhaustive search for one norm."""

    norm: NormSpec
    best_value: float
    best_clustering: Clustering
    partitions_examined: int

    def to_summary(self) -> ExactSummary:
        return ExactSummary(
            p=self.norm,
            value=self.best_value,
            clustering=[list(c) for c in self.best_clustering.clusters],
            partitions=self.partitions_examined,
        )


def enumerate_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """All set partitions of ``range(n)`` as restricted growth strings.

    Labels satisfy a[0] = 0 and a[i] <= max(a[:i]) + 1; strings come out in
    lexicographic order, so the single-cluster partition is first.
    """
    if n < 1:
        return
    labels = [0] * n
    # maxima[i] = max(labels[:i]), kept incrementally
    maxima = [0] * (n + 1)

    def extend(i: int) -> Iterator[Tuple[int, ...]]:
        if i == n:
            yield tuple(labels)
            return
        for label in range(maxima[i] + 2):
            labels[i] = label
            maxima[i + 1] = max(maxima[i], label)
            yield from extend(i + 1)

    yield from extend(1)


def _labels_vector(graph: CorrelationGraph, labels: Sequence[int]) -> List[int]:
    sizes: Dict[int, int] = {}
    for label in labels:
        sizes[label] = sizes.get(label, 0) + 1
    y = []
    for u, row in enumerate(graph.pos_adj):
        home = labels[u]
        inside = sum(1 for v in row if labels[v] == home) - 1
        y.append(len(row) + sizes[home] - 2 - 2 * inside)
    return y


def brute_force_profile(
    graph: CorrelationGraph, norms: Sequence[NormLike], max_n: int = MAX_EXACT_N
) -> List[ExactResult]:
    """Optimum for several norms from one enumeration; first optimum in order wins ties."""
    if graph.n > max_n:
        raise InstanceTooLargeError(
            f"exhaustive search is limited to n <= {max_n}, got n={graph.n}"
        )
    specs = [as_norm(norm) for norm in norms]
    best_values: List[Optional[float]] = [None] * len(specs)
    best_labels: List[Tuple[int, ...]] = [()] * len(specs)
    examined = 0
    for labels in enumerate_partitions(graph.n):
        examined += 1
        y = _labels_vector(graph, labels)
        for i, spec in enumerate(specs):
            value = lp_norm(y, spec)
            current = best_values[i]
            if current is None or value < current:
                best_values[i] = value
                best_labels[i] = labels

    logger.debug(f"Exhaustive search over {examined} partitions of n={graph.n}")
    return [
        ExactResult(
            norm=spec,
            best_value=float(best_values[i]),
            best_clustering=Clustering.from_labels(best_labels[i]),
            partitions_examined=examined,
        )
        for i, spec in enumerate(specs)
    ]


def brute_force_opt(graph: CorrelationGraph, norm: NormLike, max_n: int = MAX_EXACT_N) -> ExactResult:
    """Minimum l_p norm of the disagreement vector over every partition."""
    return brute_force_profile(graph, [norm], max_n=max_n)[0]
