"""Exact computations on finite quasi-metric spaces, their weights and formal balls."""
from .numerics import INF, ext, fmt, parse
from .space import FiniteSpace, specialization_order, validate
from .weights import Weight, rho, weight, yoneda

__version__ = "0.1.0"

__all__ = ["INF", "FiniteSpace", "Weight", "ext", "fmt", "parse", "rho", "specialization_order",
           "validate", "weight", "yoneda"]
