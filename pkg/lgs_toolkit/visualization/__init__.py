"""Level diagrams."""
