"""Locally associated orders in real quadratic fields.

Decides whether the order of index n in the ring of integers of Q[sqrt d]
is locally associated, by comparing the least power of the fundamental
unit lying in the order with the arithmetic function L(n, d).
"""

from .classify import Classification, classify, classify_direct, classify_general
from .laorder import L, is_locally_associated_direct, minimal_unit_power
from .quadfield import QuadInt, fundamental_unit, make_field

__all__ = [
    "Classification",
    "L",
    "QuadInt",
    "classify",
    "classify_direct",
    "classify_general",
    "fundamental_unit",
    "is_locally_associated_direct",
    "make_field",
    "minimal_unit_power",
]

__version__ = "0.1.0"
