"""Exact inversion of combinatorial triangles, with a Fibonacci cobweb module."""

from .kernel import QPoly, NonDivisibleError, exact_divide, qpoly_eval
from .triangles import Triangle, generate
from .inversion import invert_triangle, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "NonDivisibleError",
    "QPoly",
    "Triangle",
    "VerificationReport",
    "exact_divide",
    "generate",
    "invert_triangle",
    "qpoly_eval",
]
