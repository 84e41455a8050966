"""Validation checks for λ-graph systems."""
