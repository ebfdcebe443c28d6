"""Named graph families."""

from .graph_generator import GENERATORS, make_graph

__all__ = ["GENERATORS", "make_graph"]
