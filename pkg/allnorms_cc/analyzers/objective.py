"""Objective evaluation: disagreement vectors, norms, fractional costs and bounds."""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from ..core.clustering import Clustering
from ..core.errors import PartitionMismatchError
from ..core.graph import CorrelationGraph
from ..core.semimetric import SparseSemiMetric
from ..core.types import NormSpec


logger = logging.getLogger(__name__)

GUARANTEE_RELATIVE_SLACK = 1e-9

NormLike = Union[NormSpec, float, int, str]


@dataclass(frozen=True)
class DisagreementVector:
    """Per-vertex counts of incident disagreeing edges."""

    y: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.y)

    def __iter__(self) -> Iterator[int]:
        return iter(self.y)

    def __getitem__(self, u: int) -> int:
        return self.y[u]

    @property
    def total(self) -> int:
        return sum(self.y)


@dataclass(frozen=True)
class DualBound:
    """Dual-fitting lower bound on the optimal number of disagreeing edges.

    ``degree`` is the loop-free positive degree used in y_T = 1/(2 * degree): the
    common degree on regular instances, the maximum degree otherwise.
    """

    value: float
    is_regular: bool
    degree: int
    bad_triangles: int


def as_norm(norm: NormLike) -> NormSpec:
    return norm if isinstance(norm, NormSpec) else NormSpec.parse(norm)


def _check_partition(graph: CorrelationGraph, clustering: Clustering) -> None:
    if clustering.n != graph.n:
        raise PartitionMismatchError(
            f"clustering covers {clustering.n} vertices but the graph has {graph.n}"
        )


def disagreement_vector(graph: CorrelationGraph, clustering: Clustering) -> DisagreementVector:
    """y(u) = cut positive edges at u + negative edges inside u's cluster.

    With p(u) positive neighbours inside C(u) (self excluded), u has
    Delta_u - 1 - p(u) cut positive edges and |C(u)| - 1 - p(u) internal negative ones.
    """
    _check_partition(graph, clustering)
    assignment = clustering.assignment
    sizes = [len(c) for c in clustering.clusters]
    y = []
    for u, row in enumerate(graph.pos_adj):
        home = assignment[u]
        inside = sum(1 for v in row if assignment[v] == home) - 1
        y.append(len(row) + sizes[home] - 2 - 2 * inside)
    return DisagreementVector(tuple(y))


def lp_norm(y: Union[DisagreementVector, Sequence[float]], norm: NormLike) -> float:
    """l_p norm, factoring out the maximum entry to avoid overflow."""
    spec = as_norm(norm)
    values = np.asarray(list(y), dtype=np.float64)
    if values.size == 0:
        return 0.0
    top = float(values.max())
    if top == 0.0:
        return 0.0
    if spec.is_inf:
        return top
    if spec.p == 1.0:
        return float(np.sum(values))
    scaled = values / top
    return top * float(np.sum(scaled ** spec.p)) ** (1.0 / spec.p)


def edge_disagreement_count(graph: CorrelationGraph, clustering: Clustering) -> int:
    """Number of disagreeing edges (half the vertex sum)."""
    return disagreement_vector(graph, clustering).total // 2


def fractional_split(graph: CorrelationGraph, z: SparseSemiMetric) -> Tuple[List[float], List[float]]:
    """Per-vertex positive-edge and negative-edge parts of the fractional cost.

    Positive part: sum of z_uv over positive neighbours v != u. Negative part:
    sum of 1 - z_uv over negative v; pairs absent from ``z`` are at 1 and add nothing.
    """
    positive_part: List[float] = []
    negative_part: List[float] = []
    for u, neighbours in enumerate(graph.pos_adj):
        row = z.rows[u]
        positive = graph.pos_sets[u]
        positive_part.append(math.fsum(row.get(v, 1.0) for v in neighbours if v != u))
        negative_part.append(math.fsum(1.0 - value for v, value in row.items() if v not in positive))
    return positive_part, negative_part


def per_vertex_fractional(graph: CorrelationGraph, z: SparseSemiMetric) -> List[float]:
    """Fractional disagreement y_u(z) of every vertex."""
    positive_part, negative_part = fractional_split(graph, z)
    return [a + b for a, b in zip(positive_part, negative_part)]


def fractional_cost(graph: CorrelationGraph, z: SparseSemiMetric, norm: NormLike) -> float:
    """l_p norm of the fractional disagreement vector of ``z``."""
    return lp_norm(per_vertex_fractional(graph, z), norm)


def edge_fractional_cost(graph: CorrelationGraph, z: SparseSemiMetric) -> float:
    """Edge-level l_1 fractional cost, each edge counted once."""
    terms = [z.distance(u, v) for u, v in graph.positive_edges()]
    terms.extend(
        1.0 - value
        for u, v, value in z.stored_pairs()
        if not graph.is_positive(u, v)
    )
    return math.fsum(terms)


def check_rounding_guarantee(
    graph: CorrelationGraph,
    z: SparseSemiMetric,
    clustering: Clustering,
    factor: float,
    relative_slack: float = GUARANTEE_RELATIVE_SLACK,
) -> List[int]:
    """Vertices u whose disagreements exceed ``factor`` times y_u(z)."""
    alg = disagreement_vector(graph, clustering)
    frac = per_vertex_fractional(graph, z)
    violating = [
        u for u in range(graph.n)
        if alg[u] > factor * frac[u] * (1.0 + relative_slack) + 1e-12
    ]
    if violating:
        logger.debug(f"{len(violating)} vertices exceed {factor}x their fractional cost")
    return violating


def bad_triangle_count(graph: CorrelationGraph) -> int:
    """Triples with exactly two positive edges, each counted at its apex."""
    count = 0
    for w, row in enumerate(graph.pos_adj):
        others = [u for u in row if u != w]
        for i, u in enumerate(others):
            positive = graph.pos_sets[u]
            count += sum(1 for v in others[i + 1:] if v not in positive)
    return count


def bad_triangle_load(graph: CorrelationGraph, u: int, v: int) -> int:
    """Number of bad triangles containing the edge (u, v)."""
    pu, pv = graph.pos_sets[u], graph.pos_sets[v]
    if v in pu:
        return len(pu ^ pv)
    return len(pu & pv)


def dual_lower_bound(graph: CorrelationGraph) -> DualBound:
    """Value of the dual solution y_T = 1/(2 * degree) over all bad triangles."""
    triangles = bad_triangle_count(graph)
    degree = graph.max_loop_free_degree
    if degree == 0:
        return DualBound(value=0.0, is_regular=True, degree=0, bad_triangles=triangles)
    regular = graph.is_regular
    if not regular:
        logger.debug("positive subgraph is irregular; dual bound uses the maximum degree")
    return DualBound(
        value=triangles / (2 * degree), is_regular=regular, degree=degree, bad_triangles=triangles
    )


def check_dual_feasibility(graph: CorrelationGraph, bound: DualBound) -> List[Tuple[int, int]]:
    """Edges whose bad-triangle load exceeds 2 * degree. Visits all pairs."""
    if bound.degree == 0:
        return []
    limit = 2 * bound.degree
    return [
        (u, v)
        for u in range(graph.n)
        for v in range(u + 1, graph.n)
        if bad_triangle_load(graph, u, v) > limit
    ]
