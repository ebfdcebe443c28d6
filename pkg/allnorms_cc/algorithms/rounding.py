"""Ball-growing rounding of a semi-metric into a clustering.

Each round picks the unclustered vertex u maximising the ball load

    L(u) = sum over unclustered v with z_uv <= r of (r - z_uv)

(the self term contributes r), breaking ties by the smallest id, and clusters
every unclustered vertex within 2r of it.
"""

import heapq
import logging
from typing import List, Optional, Sequence, Tuple

from ..core.clustering import Clustering
from ..core.config import RoundingParams
from ..core.semimetric import SparseSemiMetric


logger = logging.getLogger(__name__)


def _ball_load(z: SparseSemiMetric, u: int, radius: float, clustered: Sequence[bool]) -> float:
    total = radius
    for v, value in z.rows[u].items():
        if value <= radius and not clustered[v]:
            total += radius - value
    return total


def _take_ball(z: SparseSemiMetric, center: int, radius: float, clustered: List[bool]) -> List[int]:
    members = [center]
    for v, value in z.rows[center].items():
        if value <= radius and not clustered[v]:
            members.append(v)
    for v in members:
        clustered[v] = True
    members.sort()
    return members


def _round_naive(z: SparseSemiMetric, radius: float) -> Tuple[List[List[int]], List[int]]:
    n = z.n
    clustered = [False] * n
    remaining = n
    clusters: List[List[int]] = []
    centers: List[int] = []
    while remaining:
        best, best_load = -1, -1.0
        for u in range(n):
            if clustered[u]:
                continue
            load = _ball_load(z, u, radius, clustered)
            if load > best_load:
                best, best_load = u, load
        members = _take_ball(z, best, 2 * radius, clustered)
        remaining -= len(members)
        clusters.append(members)
        centers.append(best)
    return clusters, centers


def _round_lazy(z: SparseSemiMetric, radius: float) -> Tuple[List[List[int]], List[int]]:
    # Loads only change for vertices whose radius-r ball lost a member; those are
    # recomputed and re-pushed, older heap entries are skipped by version.
    n = z.n
    clustered = [False] * n
    version = [0] * n
    heap = [(-_ball_load(z, u, radius, clustered), u, 0) for u in range(n)]
    heapq.heapify(heap)
    clusters: List[List[int]] = []
    centers: List[int] = []
    while heap:
        _, u, stamp = heapq.heappop(heap)
        if clustered[u] or stamp != version[u]:
            continue
        members = _take_ball(z, u, 2 * radius, clustered)
        clusters.append(members)
        centers.append(u)

        dirty = set()
        for v in members:
            for w, value in z.rows[v].items():
                if value <= radius and not clustered[w]:
                    dirty.add(w)
        for w in sorted(dirty):
            version[w] += 1
            heapq.heappush(heap, (-_ball_load(z, w, radius, clustered), w, version[w]))
    return clusters, centers


def kmz_round_with_centers(
    z: SparseSemiMetric, params: Optional[RoundingParams] = None
) -> Tuple[Clustering, List[int]]:
    """Round ``z`` and also return the center chosen for each cluster."""
    params = params or RoundingParams()
    if params.naive:
        clusters, centers = _round_naive(z, params.radius)
    else:
        clusters, centers = _round_lazy(z, params.radius)
    clustering = Clustering.from_clusters(z.n, clusters)
    logger.info(f"Rounding produced {clustering.num_clusters} clusters from n={z.n}")
    return clustering, centers


def kmz_round(z: SparseSemiMetric, params: Optional[RoundingParams] = None) -> Clustering:
    """Deterministic ball-growing rounding of ``z``."""
    clustering, _ = kmz_round_with_centers(z, params)
    return clustering
