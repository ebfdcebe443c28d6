"""The all-norms clustering pipeline and its evaluation."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..algorithms.metric import adjust_metric, correlation_metric, singleton_vertices
from ..algorithms.rounding import kmz_round_with_centers
from ..analyzers.objective import (
    NormLike,
    as_norm,
    check_rounding_guarantee,
    disagreement_vector,
    dual_lower_bound,
    fractional_cost,
    lp_norm,
)
from ..baselines.exact import MAX_EXACT_N, brute_force_opt
from ..baselines.manager import BaselineManager
from .clustering import Clustering
from .config import AdjustmentConfig, Config, RoundingParams
from .graph import CorrelationGraph
from .performance import StageTimer
from .semimetric import SparseSemiMetric
from .types import (
    ClusteringScore,
    DualBoundSummary,
    FractionalSummary,
    GraphSummary,
    NormSpec,
    Report,
)


logger = logging.getLogger(__name__)

# Per-vertex loss of the rounding: 5 on an exact semi-metric, 12 on the adjusted one.
EXACT_METRIC_FACTOR = 5.0
ADJUSTED_METRIC_FACTOR = 12.0


@dataclass
class PipelineResult:
    """Everything one pipeline run produces."""

    clustering: Clustering
    correlation: SparseSemiMetric
    metric: SparseSemiMetric
    adjusted: bool
    isolated: List[int]
    centers: List[int]
    timings_ms: Dict[str, float] = field(default_factory=dict)

    @property
    def guarantee_factor(self) -> float:
        return ADJUSTED_METRIC_FACTOR if self.adjusted else EXACT_METRIC_FACTOR


def round_pipeline(
    graph: CorrelationGraph,
    config: Optional[AdjustmentConfig] = None,
    params: Optional[RoundingParams] = None,
    adjust: bool = True,
) -> Tuple[Clustering, SparseSemiMetric]:
    """Correlation metric, adjustment and rounding; returns the clustering and the metric rounded."""
    result = AllNormsClusterer(Config(
        adjustment=config or AdjustmentConfig(),
        rounding=params or RoundingParams(),
    )).run(graph, adjust=adjust)
    return result.clustering, result.metric


def summarize_graph(graph: CorrelationGraph, source: Optional[str] = None) -> GraphSummary:
    return GraphSummary(
        n=graph.n,
        positive_edges=graph.num_positive_edges,
        negative_edges=graph.num_negative_edges,
        max_degree=graph.max_loop_free_degree,
        is_regular=graph.is_regular,
        source=source,
    )


def score_clustering(
    name: str, graph: CorrelationGraph, clustering: Clustering, norms: Sequence[NormLike]
) -> ClusteringScore:
    """Norm table of one clustering."""
    y = disagreement_vector(graph, clustering)
    specs = [as_norm(norm) for norm in norms]
    return ClusteringScore(
        name=name,
        num_clusters=clustering.num_clusters,
        norms={spec.token: lp_norm(y, spec) for spec in specs},
        l1_vertex=y.total,
        edge_disagreements=y.total // 2,
    )


class AllNormsClusterer:
    """Runs the pipeline and evaluates its output against baselines and bounds."""

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()
        self.baseline_manager = BaselineManager()

    def run(self, graph: CorrelationGraph, adjust: bool = True) -> PipelineResult:
        """Cluster ``graph``; the output does not depend on any norm."""
        timer = StageTimer()
        with timer.stage("metric"):
            d = correlation_metric(graph)
        isolated: List[int] = []
        with timer.stage("adjust"):
            if adjust:
                isolated = singleton_vertices(graph, d, self.config.adjustment)
                z = adjust_metric(graph, d, self.config.adjustment, isolated=isolated)
            else:
                z = d
        with timer.stage("round"):
            clustering, centers = kmz_round_with_centers(z, self.config.rounding)

        logger.info(
            f"Pipeline on n={graph.n}: {clustering.num_clusters} clusters "
            f"in {timer.total_ms:.1f} ms"
        )
        return PipelineResult(
            clustering=clustering,
            correlation=d,
            metric=z,
            adjusted=adjust,
            isolated=isolated,
            centers=centers,
            timings_ms=dict(timer.timings_ms),
        )

    def evaluate(
        self,
        graph: CorrelationGraph,
        result: PipelineResult,
        norms: Sequence[NormLike],
        seed: int = 0,
        include_baselines: bool = True,
        exact: bool = False,
        source: Optional[str] = None,
    ) -> Report:
        """Build the report for a pipeline run; ``norms`` are only read here."""
        specs: List[NormSpec] = [as_norm(norm) for norm in norms]
        timer = StageTimer()

        with timer.stage("evaluate"):
            algorithm = score_clustering("all_norms", graph, result.clustering, specs)
            algorithm.metadata["adjusted_metric"] = result.adjusted
            algorithm.metadata["centers"] = result.centers
            violations = check_rounding_guarantee(
                graph, result.metric, result.clustering, result.guarantee_factor
            )

        baselines: List[ClusteringScore] = []
        if include_baselines:
            with timer.stage("baselines"):
                for name, clustering in self.baseline_manager.run_all(graph, seed).items():
                    score = score_clustering(name, graph, clustering, specs)
                    if self.baseline_manager.baselines[name].randomized:
                        score.metadata["seed"] = seed
                    baselines.append(score)

        with timer.stage("fractional"):
            fractional = FractionalSummary(
                correlation={s.token: fractional_cost(graph, result.correlation, s) for s in specs},
                adjusted={s.token: fractional_cost(graph, result.metric, s) for s in specs},
                stored_correlation=result.correlation.num_stored,
                stored_adjusted=result.metric.num_stored,
                isolated_vertices=len(result.isolated),
            )

        with timer.stage("dual"):
            bound = dual_lower_bound(graph)

        exact_summary = None
        if exact:
            with timer.stage("exact"):
                exact_summary = brute_force_opt(graph, specs[0], max_n=MAX_EXACT_N).to_summary()

        return Report(
            graph=summarize_graph(graph, source),
            p_list=specs,
            algorithm=algorithm,
            baselines=baselines,
            fractional=fractional,
            dual_lower_bound=DualBoundSummary(
                value=bound.value,
                is_regular=bound.is_regular,
                degree=bound.degree,
                bad_triangles=bound.bad_triangles,
            ),
            bad_triangles=bound.bad_triangles,
            exact=exact_summary,
            guarantee_violations=violations,
            timings_ms={**result.timings_ms, **timer.timings_ms},
        )
