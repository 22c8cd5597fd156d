"""The groupoid equations on P1 in their normal forms.

Four shapes, each determined by a coefficient function (or nothing):

  g1:   eta(y) * y1^n - eta(x)        (n a nonzero integer, eta nonzero)
  g2:   mu(y) * y1 + y2/y1 - mu(x)
  g3:   nu(y) * y1^2 + 2*y3/y1 - 3*(y2/y1)^2 - nu(x)
  ginf: 0 = 0

A rational map R satisfies an equation when substituting y = R(x) and
y_i = R^(i)(x) kills it identically.  Gauge transforms say how the
coefficient changes when the equation is pulled back through a change of
coordinate, and they make the coefficient of g2 (resp. g3) an affine
cocycle of weight one (resp. two, with the Schwarzian correction).
"""

from __future__ import annotations

from typing import Optional, Union

from .algebra.ratfun import RatFun, mobius_conjugate
from .algebra.scalar import Scalar
from .jets import XYC, DiffPoly
from .series import (
    TruncatedSeries,
    affine_series,
    schwarzian_series,
    series_of_ratfun,
)


class GroupoidEq:
    """One normal-form equation; immutable."""

    __slots__ = ("kind", "n", "coeff")

    def __init__(self, kind: str, n: Optional[int] = None, coeff: Optional[RatFun] = None):
        if kind not in ("g1", "g2", "g3", "ginf"):
            raise ValueError(f"unknown equation kind {kind!r}")
        if kind == "g1":
            if not isinstance(n, int) or n == 0:
                raise ValueError("g1 needs a nonzero integer exponent")
            if coeff is None or coeff.is_zero():
                raise ValueError("g1 needs a nonzero coefficient")
        elif kind == "ginf":
            if n is not None or coeff is not None:
                raise ValueError("ginf carries no data")
        else:
            if n is not None:
                raise ValueError(f"{kind} carries no exponent")
            if coeff is None:
                raise ValueError(f"{kind} needs a coefficient (possibly zero)")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeff", coeff)

    def __setattr__(self, name, value):
        raise AttributeError("GroupoidEq is immutable")

    def __eq__(self, other):
        if not isinstance(other, GroupoidEq):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.n == other.n
            and self.coeff == other.coeff
        )

    def __hash__(self):
        return hash((self.kind, self.n, self.coeff))

    def __repr__(self):
        if self.kind == "ginf":
            return "Eq[ginf]"
        if self.kind == "g1":
            return f"Eq[g1 n={self.n}, eta={self.coeff}]"
        name = {"g2": "mu", "g3": "nu"}[self.kind]
        return f"Eq[{self.kind} {name}={self.coeff}]"


def g1(n: int, eta: RatFun) -> GroupoidEq:
    return GroupoidEq("g1", n=n, coeff=RatFun.coerce(eta))


def g2(mu) -> GroupoidEq:
    return GroupoidEq("g2", coeff=RatFun.coerce(mu))


def g3(nu) -> GroupoidEq:
    return GroupoidEq("g3", coeff=RatFun.coerce(nu))


def ginf() -> GroupoidEq:
    return GroupoidEq("ginf")


# -- differential invariants of a map --------------------------------------------


def affine_coeff(r: RatFun) -> RatFun:
    """r''/r', the logarithmic derivative of r'."""
    r = RatFun.coerce(r)
    if r.is_constant():
        raise ValueError("affine coefficient needs a nonconstant map")
    d1 = r.derivative()
    return d1.derivative() / d1


def schwarzian(r: RatFun) -> RatFun:
    """2 r'''/r' - 3 (r''/r')^2; vanishes exactly on degree-1 maps."""
    r = RatFun.coerce(r)
    if r.is_constant():
        raise ValueError("schwarzian needs a nonconstant map")
    d1 = r.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()
    q = d2 / d1
    return (d3 / d1) * 2 - q * q * 3


# -- residuals -------------------------------------------------------------------


def eq_residual(eq: GroupoidEq, r: RatFun) -> RatFun:
    """Substitute the map into the equation: zero means r is a solution."""
    r = RatFun.coerce(r)
    if eq.kind == "ginf":
        return RatFun.constant(0)
    if r.is_constant():
        raise ValueError("residual needs a nonconstant map")
    d1 = r.derivative()
    if eq.kind == "g1":
        eta = eq.coeff
        return eta.compose(r) * d1**eq.n - eta
    if eq.kind == "g2":
        mu = eq.coeff
        return mu.compose(r) * d1 + affine_coeff(r) - mu
    nu = eq.coeff
    return nu.compose(r) * d1 * d1 + schwarzian(r) - nu


def g1_residual_scaled(eta: RatFun, n: int, r: RatFun, c: Scalar) -> RatFun:
    """eta(r) (r')^n - c * eta, the g1 residual with multiplicative constant."""
    d1 = r.derivative()
    return eta.compose(r) * d1**n - eta * c


def is_solution(eq: GroupoidEq, r: RatFun) -> bool:
    return eq_residual(eq, r).is_zero()


def cocycle_residual(kind: int, f: RatFun, g: RatFun, extra=None) -> RatFun:
    """Chain-rule defect of the kind's invariant under composition g o f.

    Identically zero for every pair of nonconstant maps: affine_coeff and
    schwarzian are cocycles for the pseudogroup, and the kind-1 expression
    splits multiplicatively.  kind 1 takes extra = (n, eta).
    """
    f = RatFun.coerce(f)
    g = RatFun.coerce(g)
    if f.is_constant() or g.is_constant():
        raise ValueError("cocycle residual needs nonconstant maps")
    comp = g.compose(f)
    d1 = f.derivative()
    if kind == 2:
        return affine_coeff(comp) - affine_coeff(g).compose(f) * d1 - affine_coeff(f)
    if kind == 3:
        return schwarzian(comp) - schwarzian(g).compose(f) * d1 * d1 - schwarzian(f)
    if kind == 1:
        if extra is None:
            raise ValueError("kind 1 needs extra = (n, eta)")
        n, eta = extra
        eta = RatFun.coerce(eta)
        split = (eta.compose(g) * g.derivative() ** n).compose(f) * d1**n
        return eta.compose(comp) * comp.derivative() ** n - split
    raise ValueError("kind must be 1, 2 or 3")


# -- gauge action ------------------------------------------------------------------


def gauge_transform(eq: GroupoidEq, phi: RatFun) -> GroupoidEq:
    """The equation rewritten through the coordinate change phi (degree 1).

    Contract: R satisfies eq exactly when the conjugate phi^{-1} o R o phi
    satisfies gauge_transform(eq, phi).  For g2 the new coefficient is
    mu o phi * phi' + phi''/phi', for g3 it picks up the Schwarzian of
    phi, for g1 the factor (phi')^n.
    """
    phi = RatFun.coerce(phi)
    if phi.degree() != 1:
        raise ValueError("conjugator must be degree 1")
    if eq.kind == "ginf":
        return eq
    d1 = phi.derivative()
    if eq.kind == "g1":
        return g1(eq.n, eq.coeff.compose(phi) * d1**eq.n)
    if eq.kind == "g2":
        return g2(eq.coeff.compose(phi) * d1 + affine_coeff(phi))
    return g3(eq.coeff.compose(phi) * d1 * d1 + schwarzian(phi))


def chart_transform(eq: GroupoidEq) -> GroupoidEq:
    """The same equation written in the chart at infinity (x -> 1/x)."""
    flip = RatFun(1) / RatFun.x()
    return gauge_transform(eq, flip)


def gauge_transform_series(eq: GroupoidEq, phi: TruncatedSeries) -> TruncatedSeries:
    """Gauge the coefficient through a series coordinate change.

    phi is a truncated series with invertible linear term; its constant
    term is the center the coefficient gets expanded around.  The result
    is the transformed coefficient as a series in the new coordinate,
    truncated to the order the derivatives in the formula allow.
    """
    if phi.order < 4:
        raise ValueError("series gauge needs order at least 4")
    if not phi.coeffs[1]:
        raise ValueError("series coordinate change must have invertible linear term")
    if eq.kind == "ginf":
        raise ValueError("ginf has no coefficient to transform")
    d1 = phi.derivative()
    if eq.kind == "g1":
        comp = series_of_ratfun(eq.coeff, phi)
        return (comp * _series_int_pow(d1, eq.n)).truncate(phi.order - 1)
    if eq.kind == "g2":
        comp = series_of_ratfun(eq.coeff, phi)
        out = comp * d1 + affine_series(phi)
        return out.truncate(phi.order - 2)
    comp = series_of_ratfun(eq.coeff, phi)
    out = comp * d1 * d1 + schwarzian_series(phi)
    return out.truncate(phi.order - 3)


def _series_int_pow(s: TruncatedSeries, n: int) -> TruncatedSeries:
    if n < 0:
        return _series_int_pow(s.reciprocal(), -n)
    out = TruncatedSeries.constant(
        s.coeffs[0] ** 0, s.order
    )
    for _ in range(n):
        out = out * s
    return out


# -- jet-space form --------------------------------------------------------------------


def to_diffpoly(eq: GroupoidEq) -> DiffPoly:
    """The equation as a differential polynomial in x, y, y1, y2, y3."""
    if eq.kind == "ginf":
        return DiffPoly.zero()
    c = eq.coeff
    if eq.kind == "g1":
        return DiffPoly(
            {
                (eq.n,): XYC.from_y(c),
                (): -XYC.from_x(c),
            }
        )
    if eq.kind == "g2":
        return DiffPoly(
            {
                (1,): XYC.from_y(c),
                (-1, 1): XYC.const(1),
                (): -XYC.from_x(c),
            }
        )
    return DiffPoly(
        {
            (2,): XYC.from_y(c),
            (-1, 0, 1): XYC.const(2),
            (-2, 2): XYC.const(-3),
            (): -XYC.from_x(c),
        }
    )
