"""Exact commutative algebra for singular schemes of codimension-one distributions."""

from .polyring import Polynomial, RingSpec
from .parsing import parse_form, parse_ideal, parse_poly, parse_ring
from .groebner import Ideal

__version__ = "0.1.0"

__all__ = ["Polynomial", "RingSpec", "Ideal", "parse_ring", "parse_poly", "parse_ideal", "parse_form"]
