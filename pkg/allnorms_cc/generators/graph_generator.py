"""Named instance families for correlation clustering."""

import logging
from typing import Any, Callable, Dict, Iterator, List, Tuple

import numpy as np

from ..core.errors import InvalidParameterError
from ..core.graph import CorrelationGraph


logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _require_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameterError(f"n must be a positive integer, got {n!r}")


def star(n: int) -> CorrelationGraph:
    """Vertex 0 positive to everyone, all other pairs negative."""
    _require_n(n)
    return CorrelationGraph.from_edges(n, ((0, v) for v in range(1, n)))


def complete_positive(n: int) -> CorrelationGraph:
    _require_n(n)
    return CorrelationGraph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def empty_positive(n: int) -> CorrelationGraph:
    _require_n(n)
    return CorrelationGraph.from_edges(n, ())


def neg_matching(n: int) -> CorrelationGraph:
    """All pairs positive except the perfect matching (i, i + n/2)."""
    _require_n(n)
    if n % 2:
        raise InvalidParameterError(f"neg_matching needs an even n, got {n}")
    half = n // 2
    return CorrelationGraph.from_edges(
        n, ((u, v) for u in range(n) for v in range(u + 1, n) if v - u != half)
    )


def random_graph(n: int, q: float, seed: int) -> CorrelationGraph:
    """Each pair positive independently with probability q.

    Rows are drawn in order from a PCG64 stream seeded with ``seed``: for vertex u
    one uniform per partner v > u, so the graph depends only on (n, q, seed).
    """
    _require_n(n)
    if not 0.0 <= q <= 1.0:
        raise InvalidParameterError(f"probability q must lie in [0, 1], got {q}")
    if seed < 0:
        raise InvalidParameterError(f"seed must be non-negative, got {seed}")
    rng = np.random.default_rng(seed)

    def edges() -> Iterator[Edge]:
        for u in range(n - 1):
            hits = np.flatnonzero(rng.random(n - 1 - u) < q)
            for offset in hits.tolist():
                yield u, u + 1 + offset

    return CorrelationGraph.from_edges(n, edges())


def regular_circulant(n: int, degree: int) -> CorrelationGraph:
    """Positive edges (i, i +/- k mod n) for k = 1..degree/2."""
    _require_n(n)
    if degree < 0 or degree % 2 or degree >= n:
        raise InvalidParameterError(
            f"regular_circulant needs an even degree below n, got degree={degree}, n={n}"
        )
    return CorrelationGraph.from_edges(
        n, ((i, (i + k) % n) for i in range(n) for k in range(1, degree // 2 + 1))
    )


GENERATORS: Dict[str, Callable[..., CorrelationGraph]] = {
    "star": star,
    "complete_positive": complete_positive,
    "empty_positive": empty_positive,
    "neg_matching": neg_matching,
    "random": random_graph,
    "regular_circulant": regular_circulant,
}


def generator_names() -> List[str]:
    return list(GENERATORS)


def make_graph(kind: str, **params: Any) -> CorrelationGraph:
    """Build a named instance; ``kind`` accepts hyphens or underscores."""
    key = kind.replace("-", "_").lower()
    generator = GENERATORS.get(key)
    if generator is None:
        raise InvalidParameterError(f"unknown graph kind {kind!r}; choose from {', '.join(GENERATORS)}")
    try:
        graph = generator(**params)
    except TypeError as e:
        raise InvalidParameterError(f"bad parameters for {key}: {e}")
    logger.debug(f"Generated {key}({params}): {graph.num_positive_edges} positive edges")
    return graph
