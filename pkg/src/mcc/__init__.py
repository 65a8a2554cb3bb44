"""Exact Betti numbers of the Simpson compactification of rational cubics,
with the GIT and sheaf-stability checks that support it."""

from .cohomology import gaussian_binomial, poincare
from .dsl import format_space, parse_space
from .ratpoly import IntPoly, RatFun, geo_sum
from .tower import poincare_M, poincare_S, tower_terms

__version__ = "0.1.0"

__all__ = [
    "IntPoly",
    "RatFun",
    "format_space",
    "gaussian_binomial",
    "geo_sum",
    "parse_space",
    "poincare",
    "poincare_M",
    "poincare_S",
    "tower_terms",
]
