"""λ-graph system builders."""
