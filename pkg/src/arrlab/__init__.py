"""Exact computations on plane line arrangements: Milnor algebra, freeness defect nu,
Walther's bound nu', the combinatorial spectrum, and conjecture checks."""

from .arrangement import Arrangement, LatticeSummary, parse
from .pipeline import Analysis, analyze, load_source, to_report
from .scalars import Scalar, cyclotomic_context

__all__ = [
    "Analysis",
    "Arrangement",
    "LatticeSummary",
    "Scalar",
    "analyze",
    "cyclotomic_context",
    "load_source",
    "parse",
    "to_report",
]

__version__ = "0.1.0"
