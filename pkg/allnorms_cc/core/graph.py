"""Complete signed graphs stored through their positive edges.

Every vertex carries a positive self-loop, so ``pos_adj[u]`` always contains ``u``
and ``degree(u)`` counts it. Negative edges are never materialised: every distinct
pair missing from the positive adjacency is negative.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import FrozenSet, Iterable, Iterator, List, Set, Tuple, Union

from .errors import GraphFormatError, InvalidParameterError


logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class CorrelationGraph:
    """Immutable complete +/- graph on vertices ``0..n-1``."""

    n: int
    pos_adj: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameterError(f"a graph needs at least one vertex, got n={self.n}")
        if len(self.pos_adj) != self.n:
            raise InvalidParameterError(
                f"adjacency has {len(self.pos_adj)} rows for n={self.n}"
            )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "CorrelationGraph":
        """Build a graph from positive edges; self-loops are added, duplicates merged."""
        if n < 1:
            raise InvalidParameterError(f"a graph needs at least one vertex, got n={n}")
        adj: List[Set[int]] = [{u} for u in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u}, {v}) has a vertex outside [0, {n})")
            if u == v:
                raise InvalidParameterError(f"self-edge ({u}, {v}) listed; self-loops are implicit")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n=n, pos_adj=tuple(tuple(sorted(row)) for row in adj))

    @cached_property
    def pos_sets(self) -> Tuple[FrozenSet[int], ...]:
        """Positive neighbourhoods as frozensets, for O(1) sign lookups."""
        return tuple(frozenset(row) for row in self.pos_adj)

    def degree(self, u: int) -> int:
        """Delta_u = |N_u^+|, self-loop included."""
        return len(self.pos_adj[u])

    def loop_free_degree(self, u: int) -> int:
        return len(self.pos_adj[u]) - 1

    @cached_property
    def max_loop_free_degree(self) -> int:
        return max(len(row) for row in self.pos_adj) - 1

    @cached_property
    def is_regular(self) -> bool:
        """True when every vertex has the same loop-free positive degree."""
        return len({len(row) for row in self.pos_adj}) == 1

    def is_positive(self, u: int, v: int) -> bool:
        """Sign of the pair (u, v); ``is_positive(u, u)`` is True by convention."""
        return v in self.pos_sets[u]

    def positive_edges(self) -> Iterator[Tuple[int, int]]:
        """Positive edges with u < v in lexicographic order; self-loops omitted."""
        for u, row in enumerate(self.pos_adj):
            for v in row:
                if v > u:
                    yield u, v

    @cached_property
    def num_positive_edges(self) -> int:
        return sum(len(row) - 1 for row in self.pos_adj) // 2

    @property
    def num_negative_edges(self) -> int:
        return self.n * (self.n - 1) // 2 - self.num_positive_edges

    def neighborhood_intersections(self, u: int, v: int) -> Tuple[int, int, int, int]:
        """Sizes of N_u^+∩N_v^+, N_u^-∩N_v^-, N_u^+∩N_v^-, N_u^-∩N_v^+.

        Negative neighbourhoods are complements of the positive ones, so the four
        numbers always sum to n, also for u == v.
        """
        pu, pv = self.pos_sets[u], self.pos_sets[v]
        both = len(pu & pv)
        only_u = len(pu) - both
        only_v = len(pv) - both
        neither = self.n - both - only_u - only_v
        return both, neither, only_u, only_v


def load_graph(path: PathLike) -> CorrelationGraph:
    """Parse the line-oriented graph text format."""
    n = None
    edges = set()
    with open(path, "rb") as f:
        for lineno, data in enumerate(f, start=1):
            try:
                line = data.decode("utf-8").strip()
            except UnicodeDecodeError as e:
                raise GraphFormatError(f"not valid UTF-8 text: {e.reason}", lineno)
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 2 or parts[0] != "n":
                    raise GraphFormatError("expected header 'n <N>'", lineno)
                try:
                    n = int(parts[1])
                except ValueError:
                    raise GraphFormatError(f"vertex count is not an integer: {parts[1]!r}", lineno)
                if n < 1:
                    raise GraphFormatError(f"vertex count must be at least 1, got {n}", lineno)
                continue
            if len(parts) != 2:
                raise GraphFormatError(f"expected '<u> <v>', got {line!r}", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"edge endpoints are not integers: {line!r}", lineno)
            if u < 0 or v < 0 or u >= n or v >= n:
                raise GraphFormatError(f"vertex index out of range [0, {n}): {line!r}", lineno)
            if u == v:
                raise GraphFormatError(f"self-edge {u} {v} is not allowed; self-loops are implicit", lineno)
            edges.add((min(u, v), max(u, v)))

    if n is None:
        raise GraphFormatError("missing header 'n <N>'")

    graph = CorrelationGraph.from_edges(n, sorted(edges))
    logger.debug(f"Loaded graph from {path}: n={n}, positive edges={graph.num_positive_edges}")
    return graph


def format_graph(graph: CorrelationGraph) -> str:
    """Canonical text form: header, then u < v edges in sorted order."""
    lines = [f"n {graph.n}"]
    lines.extend(f"{u} {v}" for u, v in graph.positive_edges())
    return "\n".join(lines) + "\n"


def save_graph(graph: CorrelationGraph, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_graph(graph))
    logger.debug(f"Saved graph to {path}: {graph.num_positive_edges} positive edges")
