"""Metric construction and rounding."""
