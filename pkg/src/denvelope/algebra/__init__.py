from .scalar import ONE, Scalar, ZERO, scalar_from_parts, validate_radicand
from .poly import Poly, coprime_refine, poly_gcd, poly_lcm, squarefree_part
from .ratfun import PointP1, RatFun, mobius_conjugate, ratfun_to_str
from .divisor import Divisor
from .linalg import in_span, matrix_rank, same_span, solve_affine

__all__ = [
    "ONE", "ZERO", "Scalar", "scalar_from_parts", "validate_radicand",
    "Poly", "coprime_refine", "poly_gcd", "poly_lcm", "squarefree_part",
    "PointP1", "RatFun", "mobius_conjugate", "ratfun_to_str",
    "Divisor", "in_span", "matrix_rank", "same_span", "solve_affine",
]
