"""Shift documents, builtin examples and artifact writers."""
