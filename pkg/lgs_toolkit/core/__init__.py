"""Symbolic core: shifts, oracles, Shannon graphs, λ-graph systems, entropy and SSE."""
