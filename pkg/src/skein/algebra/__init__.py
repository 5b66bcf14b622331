"""Exact scalar tower: integer polynomials and rational functions in (d, t),
prime fields, number fields, resultants and CRT tools."""

from .modular import (PRIME_FLOOR, InterpolationError, PrimePoint, balanced, crt_lift,
                      interpolate_univariate, next_prime, prime_list, random_prime,
                      rational_reconstruct, staged_lift)
from .numfield import ExtElem, ExtensionField, cyclotomic_field, quadratic_field
from .poly import CTX, D, T, NotDivisible, evaluate, exact_divide, format_poly, multiplicity, parse_poly
from .ratfunc import RatFunc, as_ratfunc
from .resultant import resultant

__all__ = [
    "CTX", "D", "T", "PRIME_FLOOR", "ExtElem", "ExtensionField", "InterpolationError",
    "NotDivisible", "PrimePoint", "RatFunc", "as_ratfunc", "balanced", "crt_lift",
    "cyclotomic_field", "evaluate", "exact_divide", "format_poly", "interpolate_univariate",
    "multiplicity", "next_prime", "parse_poly", "prime_list", "quadratic_field",
    "random_prime", "rational_reconstruct", "resultant", "staged_lift",
]
