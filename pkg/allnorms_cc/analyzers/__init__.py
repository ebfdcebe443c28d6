"""Objective evaluation for clusterings and semi-metrics."""

from .objective import disagreement_vector, fractional_cost, lp_norm

__all__ = ["disagreement_vector", "fractional_cost", "lp_norm"]
