"""Clusterings: partitions of the vertex set, kept in cluster creation order."""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

from .errors import PartitionMismatchError


@dataclass(frozen=True)
class Clustering:
    """A partition of ``0..n-1``.

    ``clusters[i]`` lists the members of cluster ``i`` in ascending order, clusters
    are indexed in creation order and ``assignment[u]`` is the index of u's cluster.
    """

    n: int
    assignment: Tuple[int, ...]
    clusters: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_clusters(cls, n: int, clusters: Iterable[Iterable[int]]) -> "Clustering":
        """Validate a list of clusters and index it in the given order."""
        assignment = [-1] * n
        normalized: List[Tuple[int, ...]] = []
        for index, members in enumerate(clusters):
            block = tuple(sorted(members))
            if not block:
                raise PartitionMismatchError(f"cluster {index} is empty")
            for v in block:
                if not 0 <= v < n:
                    raise PartitionMismatchError(f"vertex {v} outside [0, {n})")
                if assignment[v] != -1:
                    raise PartitionMismatchError(f"vertex {v} appears in more than one cluster")
                assignment[v] = index
            normalized.append(block)
        missing = [v for v, c in enumerate(assignment) if c == -1]
        if missing:
            raise PartitionMismatchError(f"{len(missing)} vertices are unclustered, e.g. {missing[0]}")
        return cls(n=n, assignment=tuple(assignment), clusters=tuple(normalized))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Clustering":
        """Build from arbitrary per-vertex labels; clusters ordered by first appearance."""
        order: Dict[int, List[int]] = {}
        for v, label in enumerate(labels):
            order.setdefault(label, []).append(v)
        return cls.from_clusters(len(labels), order.values())

    @property
    def num_clusters(self) -> int:
        return len(self.clusters)

    def cluster_of(self, u: int) -> Tuple[int, ...]:
        return self.clusters[self.assignment[u]]

    def same_cluster(self, u: int, v: int) -> bool:
        return self.assignment[u] == self.assignment[v]

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "clusters": [list(c) for c in self.clusters]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Clustering":
        try:
            return cls.from_clusters(int(data["n"]), data["clusters"])
        except (KeyError, TypeError) as e:
            raise PartitionMismatchError(f"malformed clustering object: {e}")


def save_clustering(clustering: Clustering, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(clustering.to_json() + "\n")


def load_clustering(path: Union[str, Path]) -> Clustering:
    with open(path, "r", encoding="utf-8") as f:
        return Clustering.from_dict(json.load(f))
