"""λ-graph system toolkit"""
__version__ = "1.0.0"
from .core.analyzer import ShiftAnalyzer
