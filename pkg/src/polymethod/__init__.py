"""Exact polynomial-partitioning toolkit over the rationals.

Groebner bases, Hilbert functions and component splitting live in
``polymethod.ideal``; partial-degree profiles and covers in
``polymethod.variety``; vanishing polynomials in ``polymethod.siegel``;
bisecting chains in ``polymethod.partition``; incidence bounds and the
matching constructions in ``polymethod.incidence``.
"""

from .errors import PolyMethodError
from .ideal import Ideal
from .poly import Polynomial, parse

__all__ = ["Ideal", "Polynomial", "PolyMethodError", "parse"]
__version__ = "0.1.0"
