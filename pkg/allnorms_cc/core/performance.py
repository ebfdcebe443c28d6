"""Timing and concurrency utilities for the pipeline, verifier and benchmark.

This module provides:
- Stage timing in milliseconds
- Per-operation timing statistics
- A bounded asyncio pool for running independent trials
"""

import asyncio
import logging
import statistics
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Awaitable, Callable, Dict, Iterator, List, Sequence, TypeVar


logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class PerformanceMetrics:
    """One recorded operation."""

    operation_name: str
    duration_ms: float
    timestamp: datetime
    metadata: Dict[str, Any] = field(default_factory=dict)


class StageTimer:
    """Collects wall-clock durations of named pipeline stages."""

    def __init__(self) -> None:
        self.timings_ms: Dict[str, float] = {}

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """Time the enclosed block; repeated names accumulate."""
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = (time.perf_counter() - start) * 1000.0
            self.timings_ms[name] = self.timings_ms.get(name, 0.0) + elapsed
            logger.debug(f"stage {name} took {elapsed:.3f} ms")

    @property
    def total_ms(self) -> float:
        return sum(self.timings_ms.values())


class PerformanceMonitor:
    """Performance monitoring across repeated runs."""

    def __init__(self, max_metrics: int = 100000):
        """Initialize performance monitor.

        Args:
            max_metrics: Maximum number of metrics to keep
        """
        self.max_metrics = max_metrics
        self.metrics: List[PerformanceMetrics] = []

    def record_operation(self, operation_name: str, duration_ms: float, **metadata: Any) -> None:
        """Record the duration of one operation."""
        self.metrics.append(
            PerformanceMetrics(
                operation_name=operation_name,
                duration_ms=duration_ms,
                timestamp=datetime.now(),
                metadata=metadata,
            )
        )
        if len(self.metrics) > self.max_metrics:
            self.metrics = self.metrics[-self.max_metrics:]

    def get_operation_stats(self, operation_name: str) -> Dict[str, Any]:
        """Get statistics for a specific operation.

        Args:
            operation_name: Name of the operation

        Returns:
            Statistics dictionary
        """
        durations = [m.duration_ms for m in self.metrics if m.operation_name == operation_name]
        if not durations:
            return {"operation": operation_name, "count": 0}
        return {
            "operation": operation_name,
            "count": len(durations),
            "median_ms": statistics.median(durations),
            "min_ms": min(durations),
            "max_ms": max(durations),
            "mean_ms": statistics.fmean(durations),
        }

    def operations(self) -> List[str]:
        seen: Dict[str, None] = {}
        for m in self.metrics:
            seen.setdefault(m.operation_name, None)
        return list(seen)


class AsyncPoolExecutor:
    """Bounded pool running blocking trial functions from asyncio."""

    def __init__(self, max_workers: int = 4):
        """Initialize executor.

        Args:
            max_workers: Maximum number of concurrently running trials
        """
        self.max_workers = max_workers
        self.semaphore = asyncio.Semaphore(max_workers)

    async def submit(self, func: Callable[..., T], *args: Any, **kwargs: Any) -> T:
        """Run ``func`` in a worker thread once a slot is free."""
        async with self.semaphore:
            return await asyncio.to_thread(func, *args, **kwargs)

    async def submit_all(self, func: Callable[..., T], argument_lists: Sequence[Sequence[Any]]) -> List[T]:
        """Run ``func`` once per argument list; results come back in submission order."""
        coroutines: List[Awaitable[T]] = [self.submit(func, *args) for args in argument_lists]
        return list(await asyncio.gather(*coroutines))
