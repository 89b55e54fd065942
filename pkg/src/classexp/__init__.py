"""Class-group exponents of curves over finite fields: exact computation and bound checks."""

from .bounds import (
    BoundValue,
    exponent_lower_bound,
    nonfibral_lower_bound,
    order_count_lower_bound,
    relative_bound_part1,
    relative_bound_part2,
    relative_bound_sharp,
)
from .curve import HyperellipticCurve, count_points, curve_from_spec, to_odd_model, validate
from .ff import GF, make_extension
from .jacobian import Jacobian, group_profile
from .relative import build_cover, relative_profile
from .zeta import l_polynomial

__all__ = [
    "GF", "make_extension", "HyperellipticCurve", "validate", "curve_from_spec", "count_points",
    "to_odd_model", "l_polynomial", "Jacobian", "group_profile", "BoundValue",
    "exponent_lower_bound", "order_count_lower_bound", "nonfibral_lower_bound",
    "relative_bound_part1", "relative_bound_part2", "relative_bound_sharp", "build_cover",
    "relative_profile",
]
