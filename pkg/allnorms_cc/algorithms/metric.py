"""Correlation metric, adjusted correlation metric and delta-triangle checks."""

import logging
from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.config import AdjustmentConfig
from ..core.errors import InvalidParameterError
from ..core.graph import CorrelationGraph
from ..core.semimetric import SparseSemiMetric


logger = logging.getLogger(__name__)

TRIANGLE_SLACK = 1e-12


def jaccard_distance(common: int, union: int) -> float:
    """1 - common/union as one correctly rounded division of integers."""
    return (union - common) / union


def correlation_distance(graph: CorrelationGraph, u: int, v: int) -> float:
    """d_uv recomputed directly from the two positive neighbourhoods."""
    if u == v:
        return 0.0
    pu, pv = graph.pos_sets[u], graph.pos_sets[v]
    return jaccard_distance(len(pu & pv), len(pu | pv))


def correlation_metric(graph: CorrelationGraph) -> SparseSemiMetric:
    """Sparse correlation metric.

    Common positive neighbours are counted by enumerating, for every w, the pairs
    inside N_w^+ (paths of length at most two through w). Pairs never seen share no
    positive neighbour and sit at the implicit distance 1.
    """
    common: Counter = Counter()
    for row in graph.pos_adj:
        common.update(combinations(row, 2))

    table: List[Dict[int, float]] = [{} for _ in range(graph.n)]
    for (u, v), shared in common.items():
        union = graph.degree(u) + graph.degree(v) - shared
        value = jaccard_distance(shared, union)
        table[u][v] = value
        table[v][u] = value

    metric = SparseSemiMetric.from_rows(table)
    logger.info(f"Correlation metric: n={graph.n}, stored pairs={metric.num_stored}")
    return metric


def singleton_vertices(
    graph: CorrelationGraph, d: SparseSemiMetric, config: Optional[AdjustmentConfig] = None
) -> List[int]:
    """Vertices u with |N_u^- ∩ {v : d_uv <= threshold}| >= factor * Delta_u.

    Evaluated on the unmodified d for every vertex, so the answer does not depend
    on the order vertices are visited in.
    """
    config = config or AdjustmentConfig()
    threshold = config.round_up_threshold
    factor = Fraction(config.singleton_factor).limit_denominator(10**6)
    chosen = []
    for u, row in enumerate(d.rows):
        positive = graph.pos_sets[u]
        near_negative = sum(1 for v, value in row.items() if v not in positive and value <= threshold)
        if near_negative >= factor * graph.degree(u):
            chosen.append(u)
    return chosen


def adjust_metric(
    graph: CorrelationGraph,
    d: SparseSemiMetric,
    config: Optional[AdjustmentConfig] = None,
    isolated: Optional[Sequence[int]] = None,
) -> SparseSemiMetric:
    """Adjusted correlation metric f.

    Starts from d, raises to 1 every negative pair with d strictly above the
    round-up threshold, then raises every pair touching a vertex picked by
    ``singleton_vertices`` (pass ``isolated`` to reuse an earlier answer).
    """
    config = config or AdjustmentConfig()
    threshold = config.round_up_threshold
    if isolated is None:
        isolated = singleton_vertices(graph, d, config)
    raised = set(isolated)

    table: List[Dict[int, float]] = [{} for _ in range(d.n)]
    rounded_up = 0
    for u, row in enumerate(d.rows):
        if u in raised:
            continue
        positive = graph.pos_sets[u]
        out = table[u]
        for v, value in row.items():
            if v in raised:
                continue
            if v not in positive and value > threshold:
                rounded_up += 1
                continue
            out[v] = value

    adjusted = SparseSemiMetric.from_rows(table)
    logger.info(
        f"Adjusted metric: {rounded_up // 2} negative pairs rounded up, "
        f"{len(raised)} vertices isolated, stored pairs={adjusted.num_stored}"
    )
    return adjusted


def check_delta_triangle(
    z: SparseSemiMetric, delta: float, slack: float = TRIANGLE_SLACK
) -> List[Tuple[int, int, int]]:
    """Every (u, v, w), u < v, with z_uv > delta * (z_uw + z_vw) + slack.

    Only triples whose two right-hand distances are stored need checking: if either
    is 1 the right-hand side is at least delta >= 1 >= z_uv.
    """
    if delta < 1:
        raise InvalidParameterError(f"delta must be at least 1, got {delta}")
    violations = []
    for w, row in enumerate(z.rows):
        items = list(row.items())
        for i, (u, zu) in enumerate(items):
            for v, zv in items[i + 1:]:
                if z.distance(u, v) > delta * (zu + zv) + slack:
                    violations.append((u, v, w))
    violations.sort()
    if violations:
        logger.debug(f"{len(violations)} triples violate the {delta}-triangle inequality")
    return violations
