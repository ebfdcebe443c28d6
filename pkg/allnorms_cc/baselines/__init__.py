"""Baseline clusterings and the exhaustive oracle."""

from .base import ClusteringBaseline
from .manager import BaselineManager

__all__ = ["BaselineManager", "ClusteringBaseline"]
