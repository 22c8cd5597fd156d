"""Exact classification of rational self-maps of the projective line by
the differential equations their local symmetries satisfy.

The package finds, for a rational map R, the lowest-order normal-form
equation (order one, two, or three) whose local solutions contain R,
verifies the linearization mechanism behind the classification, and
generates the three exceptional families for cross-checks.  Everything
is exact over Q or a quadratic extension; floating point appears only
in explicitly numeric series routines.
"""

__version__ = "0.1.0"

from .algebra.scalar import Scalar
from .algebra.poly import Poly
from .algebra.ratfun import PointP1, RatFun, mobius_conjugate
from .algebra.divisor import Divisor
from .equations import (GroupoidEq, affine_coeff, cocycle_residual, eq_residual,
                        g1, g2, g3, gauge_transform, ginf, is_solution,
                        schwarzian)
from .dynamics import (critical_divisor, exceptional_set, fixed_points,
                       postcritical_closure, repelling_point_avoiding)
from .series import TruncatedSeries
from .koenigs import (KoenigsSeries, koenigs_series, linearization_residual,
                      pullback_mu_series, pullback_nu_series)
from .families import (FamilySpec, LattesParams, chebyshev, commutes,
                       known_mu, lattes, monomial)
from .solver import (ClassificationReport, SolutionSpace, SolveCaps,
                     classify, solve_g1, solve_g2, solve_g3)

__all__ = [
    "__version__",
    "Scalar", "Poly", "PointP1", "RatFun", "mobius_conjugate", "Divisor",
    "GroupoidEq", "g1", "g2", "g3", "ginf", "eq_residual", "is_solution",
    "gauge_transform", "affine_coeff", "schwarzian", "cocycle_residual",
    "critical_divisor", "postcritical_closure", "exceptional_set",
    "fixed_points", "repelling_point_avoiding",
    "TruncatedSeries", "KoenigsSeries", "koenigs_series",
    "linearization_residual", "pullback_mu_series", "pullback_nu_series",
    "FamilySpec", "LattesParams", "monomial", "chebyshev", "lattes",
    "commutes", "known_mu",
    "SolveCaps", "SolutionSpace", "ClassificationReport",
    "classify", "solve_g1", "solve_g2", "solve_g3",
]
