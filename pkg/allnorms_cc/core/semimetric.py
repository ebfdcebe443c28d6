"""Sparse symmetric distance structures on ``0..n-1``.

Only distances strictly below 1 are stored. Absent pairs are at distance 1 and the
diagonal is 0.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, TextIO, Tuple

from .errors import InvalidParameterError


@dataclass(frozen=True)
class SparseSemiMetric:
    """Immutable sparse distance table; ``rows[u]`` maps neighbours to distances < 1."""

    n: int
    rows: Tuple[Dict[int, float], ...]

    @classmethod
    def from_pairs(cls, n: int, pairs: Mapping[Tuple[int, int], float]) -> "SparseSemiMetric":
        """Build from an unordered-pair mapping; values >= 1 are dropped as implicit."""
        table: List[Dict[int, float]] = [{} for _ in range(n)]
        for (u, v), value in pairs.items():
            if u == v:
                if value != 0.0:
                    raise InvalidParameterError(f"diagonal entry ({u}, {u}) must be 0, got {value}")
                continue
            if not 0.0 <= value <= 1.0:
                raise InvalidParameterError(f"distance ({u}, {v}) = {value} outside [0, 1]")
            if value < 1.0:
                table[u][v] = value
                table[v][u] = value
        return cls.from_rows(table)

    @classmethod
    def from_rows(cls, table: List[Dict[int, float]]) -> "SparseSemiMetric":
        """Freeze mutable rows, ordering each row by neighbour id."""
        return cls(n=len(table), rows=tuple(dict(sorted(row.items())) for row in table))

    @classmethod
    def constant(cls, n: int, value: float) -> "SparseSemiMetric":
        """Every off-diagonal pair at ``value`` (1 gives the empty table)."""
        if value >= 1.0:
            return cls(n=n, rows=tuple({} for _ in range(n)))
        return cls.from_rows([{v: value for v in range(n) if v != u} for u in range(n)])

    def distance(self, u: int, v: int) -> float:
        if u == v:
            return 0.0
        return self.rows[u].get(v, 1.0)

    def stored_pairs(self) -> Iterator[Tuple[int, int, float]]:
        """Stored entries with u < v, sorted."""
        for u, row in enumerate(self.rows):
            for v, value in row.items():
                if v > u:
                    yield u, v, value

    @property
    def num_stored(self) -> int:
        """Number of stored unordered pairs."""
        return sum(len(row) for row in self.rows) // 2

    def is_symmetric(self) -> bool:
        return all(
            self.rows[v].get(u) == value
            for u, row in enumerate(self.rows)
            for v, value in row.items()
        )


def dump_metric(z: SparseSemiMetric, stream: TextIO) -> int:
    """Write ``<u> <v> <distance>`` lines with 17 significant digits; returns line count."""
    count = 0
    for u, v, value in z.stored_pairs():
        stream.write(f"{u} {v} {value:.17g}\n")
        count += 1
    return count
