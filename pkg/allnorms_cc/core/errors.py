"""Exception hierarchy for the all-norms clustering toolkit."""

from typing import Optional


class ClusteringError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(ClusteringError, ValueError):
    """A graph file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidParameterError(ClusteringError, ValueError):
    """A generator, norm or configuration parameter is out of range."""


class PartitionMismatchError(ClusteringError, ValueError):
    """A clustering does not partition the vertices of the graph it is scored on."""


class InstanceTooLargeError(ClusteringError, ValueError):
    """The instance is too large for exhaustive enumeration."""
