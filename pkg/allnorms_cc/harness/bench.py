"""Scaling benchmark for the clustering pipeline."""

import csv
import logging
from typing import Any, Dict, List, Optional, Sequence, TextIO

from ..analyzers.objective import disagreement_vector, dual_lower_bound, lp_norm
from ..baselines.builtin import pivot
from ..core.config import Config
from ..core.errors import InvalidParameterError
from ..core.graph import CorrelationGraph
from ..core.performance import AsyncPoolExecutor, PerformanceMonitor
from ..core.pipeline import AllNormsClusterer
from ..core.types import BenchRow
from ..generators.graph_generator import random_graph, regular_circulant


logger = logging.getLogger(__name__)

FAMILIES = ("regular-circulant", "random")
CSV_COLUMNS = [
    "n", "delta", "seed", "t_metric_ms", "t_adjust_ms", "t_round_ms",
    "l1", "l2", "linf", "pivot_l1", "dual_lb",
]


def bench_graph(family: str, n: int, delta: int, seed: int) -> CorrelationGraph:
    """Instance of size n with expected loop-free degree ``delta``."""
    if family == "regular-circulant":
        return regular_circulant(n, delta)
    if family == "random":
        return random_graph(n, min(1.0, delta / max(n - 1, 1)), seed)
    raise InvalidParameterError(f"unknown bench family {family!r}; choose from {', '.join(FAMILIES)}")


def bench_trial(config: Config, family: str, n: int, delta: int, seed: int) -> BenchRow:
    graph = bench_graph(family, n, delta, seed)
    result = AllNormsClusterer(config).run(graph)
    y = disagreement_vector(graph, result.clustering)
    pivot_y = disagreement_vector(graph, pivot(graph, seed))
    return BenchRow(
        n=n,
        delta=delta,
        seed=seed,
        t_metric_ms=result.timings_ms["metric"],
        t_adjust_ms=result.timings_ms["adjust"],
        t_round_ms=result.timings_ms["round"],
        l1=lp_norm(y, 1),
        l2=lp_norm(y, 2),
        linf=lp_norm(y, "inf"),
        pivot_l1=lp_norm(pivot_y, 1),
        dual_lb=dual_lower_bound(graph).value,
        family=family,
    )


async def run_bench(
    sizes: Sequence[int],
    delta: int,
    trials: int,
    seed: int = 0,
    families: Sequence[str] = FAMILIES,
    config: Optional[Config] = None,
    workers: int = 1,
) -> List[BenchRow]:
    """One row per (trial, family, size), in that order.

    Trial ``t`` uses seed ``seed + t`` for every family. Keep ``workers`` at 1 when
    the timings matter.
    """
    if list(sizes) != sorted(sizes):
        raise InvalidParameterError(f"bench sizes must be ascending, got {list(sizes)}")
    if not families:
        raise InvalidParameterError("bench needs at least one family")
    for family in families:
        if family not in FAMILIES:
            raise InvalidParameterError(f"unknown bench family {family!r}; choose from {', '.join(FAMILIES)}")
    config = config or Config()
    jobs = [
        (config, family, n, delta, seed + t)
        for t in range(trials)
        for family in families
        for n in sizes
    ]
    executor = AsyncPoolExecutor(workers)
    rows = await executor.submit_all(bench_trial, jobs)
    logger.info(f"Bench: {len(rows)} rows over sizes {list(sizes)} at delta={delta} ({', '.join(families)})")
    return rows


def write_csv(rows: Sequence[BenchRow], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    for row in rows:
        writer.writerow(row.model_dump(include=set(CSV_COLUMNS)))


def scaling_summary(rows: Sequence[BenchRow]) -> Dict[str, Any]:
    """Median total pipeline time per family and size, and the ratio between consecutive sizes.

    Informational only; timing noise never fails a run.
    """
    monitor = PerformanceMonitor()
    for row in rows:
        monitor.record_operation(
            f"{row.family}:{row.n}", row.t_metric_ms + row.t_adjust_ms + row.t_round_ms, seed=row.seed
        )
    medians: Dict[str, Dict[int, float]] = {}
    for op in monitor.operations():
        family, n = op.rsplit(":", 1)
        medians.setdefault(family, {})[int(n)] = monitor.get_operation_stats(op)["median_ms"]

    summary: Dict[str, Any] = {}
    for family, by_size in medians.items():
        sizes = sorted(by_size)
        ratios = []
        for smaller, larger in zip(sizes, sizes[1:]):
            if by_size[smaller] > 0:
                ratio = by_size[larger] / by_size[smaller]
                ratios.append({"from_n": smaller, "to_n": larger, "ratio": ratio})
                logger.info(f"Median pipeline time ({family}) n={larger} / n={smaller}: {ratio:.2f}")
        summary[family] = {"median_total_ms": {n: by_size[n] for n in sizes}, "ratios": ratios}
    return {"families": summary}
