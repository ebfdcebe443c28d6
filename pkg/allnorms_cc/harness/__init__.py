"""Invariant verification and scaling benchmarks."""
