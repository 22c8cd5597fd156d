"""Rational functions on P1 in one variable, exact and canonical.

Invariant: gcd(num, den) = 1 and den is monic, so equal functions are
equal objects.  Points of P1 are PointP1, with None standing for the
point at infinity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple, Union

import mpmath

from .poly import Poly, clear_integer, poly_gcd
from .scalar import ONE, ZERO, Scalar


class DegreeCapExceeded(ArithmeticError):
    """An iterate grew past the configured degree cap."""


class PointP1:
    """A point of the projective line: a finite Scalar or infinity."""

    __slots__ = ("value",)

    def __init__(self, value: Optional[Scalar] = None):
        if value is not None:
            value = Scalar.coerce(value)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("PointP1 is immutable")

    @staticmethod
    def infinity() -> "PointP1":
        return PointP1(None)

    @staticmethod
    def of(value) -> "PointP1":
        return PointP1(Scalar.coerce(value))

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __eq__(self, other):
        if isinstance(other, PointP1):
            return self.value == other.value
        if isinstance(other, (int, Fraction, Scalar)):
            return self.value is not None and self.value == Scalar.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(("P1", self.value))

    def sort_key(self):
        if self.value is None:
            return (1, (Fraction(0), Fraction(0), 0))
        return (0, self.value.sort_key())

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def __repr__(self):
        return f"PointP1({self})"


INF = PointP1.infinity()


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _to_poly(num)
        den = Poly((ONE,)) if den is None else _to_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if num.is_zero():
            den = Poly((ONE,))
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead_inv = den.leading().inverse()
            num = num.scale(lead_inv)
            den = den.scale(lead_inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def x() -> "RatFun":
        return RatFun(Poly.x())

    @staticmethod
    def constant(c) -> "RatFun":
        return RatFun(Poly.constant(c))

    @staticmethod
    def coerce(value) -> "RatFun":
        if isinstance(value, RatFun):
            return value
        if isinstance(value, Poly):
            return RatFun(value)
        if isinstance(value, (int, Fraction, Scalar)):
            return RatFun.constant(value)
        raise TypeError(f"cannot coerce {value!r} to RatFun")

    # -- structure -----------------------------------------------------------

    def degree(self) -> int:
        """Degree as a self-map of P1: max of numerator and denominator degrees."""
        return max(self.num.degree(), self.den.degree())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() <= 0

    def is_poly(self) -> bool:
        return self.den.degree() == 0

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("not a constant")
        if self.num.is_zero():
            return ZERO
        return self.num.coeffs[0]

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field operations -------------------------------------------------------

    def __add__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFun(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFun.coerce(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            if self.is_zero():
                raise ZeroDivisionError("division by zero polynomial")
            return RatFun(self.den, self.num) ** (-exponent)
        result = RatFun.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "RatFun":
        n, d = self.num, self.den
        return RatFun(n.derivative() * d - n * d.derivative(), d * d)

    # -- P1 geometry ----------------------------------------------------------------

    def evaluate(self, point) -> PointP1:
        if not isinstance(point, PointP1):
            point = PointP1.of(point)
        if point.is_infinity:
            dn, dd = self.num.degree(), self.den.degree()
            if dn > dd:
                return INF
            if dn < dd:
                return PointP1.of(ZERO)
            return PointP1.of(self.num.leading() / self.den.leading())
        nv = self.num.evaluate(point.value)
        dv = self.den.evaluate(point.value)
        if not dv:
            return INF
        return PointP1.of(nv / dv)

    def eval_scalar(self, point) -> Scalar:
        v = self.evaluate(point)
        if v.is_infinity:
            raise ZeroDivisionError(f"pole at {point}")
        return v.value

    def eval_mpc(self, z, precision: int = 53):
        with mpmath.workprec(precision):
            dv = self.den.eval_mpc(z, precision)
            nv = self.num.eval_mpc(z, precision)
            return nv / dv

    def compose(self, inner: "RatFun") -> "RatFun":
        """self after inner, exact, with the degree sanity check."""
        inner = RatFun.coerce(inner)
        if inner.is_constant():
            v = self.evaluate(PointP1.of(inner.constant_value()))
            if v.is_infinity:
                raise ZeroDivisionError("composition collapses to the constant infinity")
            return RatFun.constant(v.value)
        p, q = inner.num, inner.den
        n = max(self.num.degree(), self.den.degree())

        def plug(poly: Poly) -> Poly:
            # poly(p/q) * q^n, cleared of denominators
            acc = Poly()
            for k, c in enumerate(poly.coeffs):
                if c:
                    acc = acc + (p**k) * (q ** (n - k)).scale(c)
            return acc

        out = RatFun(plug(self.num), plug(self.den))
        if not self.is_constant():
            expected = self.degree() * inner.degree()
            if out.degree() != expected:
                raise ArithmeticError("degree dropped during composition")
        return out

    def iterate(self, n: int, degree_cap: int = 4096) -> "RatFun":
        if n < 1:
            raise ValueError("iterate count must be positive")
        if self.degree() >= 2 and self.degree() ** n > degree_cap:
            raise DegreeCapExceeded("iterate degree cap")
        out = self
        for _ in range(n - 1):
            out = out.compose(self)
            if out.degree() > degree_cap:
                raise DegreeCapExceeded("iterate degree cap")
        return out

    def field_radicand(self) -> Optional[int]:
        d = self.num.field_radicand()
        if d is None:
            d = self.den.field_radicand()
        return d

    def __str__(self):
        return ratfun_to_str(self)

    def __repr__(self):
        return f"RatFun[{self}]"


def _to_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction, Scalar)):
        return Poly.constant(value)
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


def mobius_conjugate(r: RatFun, phi: RatFun) -> RatFun:
    """phi^-1 o r o phi for a degree-1 phi."""
    phi = RatFun.coerce(phi)
    if phi.degree() != 1:
        raise ValueError("conjugator must be degree 1")
    a = phi.num.coeff(1)
    b = phi.num.coeff(0)
    c = phi.den.coeff(1)
    d = phi.den.coeff(0)
    inv = RatFun(Poly.of(-b, d), Poly.of(a, -c))
    return inv.compose(r.compose(phi))


# -- canonical strings ---------------------------------------------------------------


def _scalar_coeff_str(c: Scalar, power: int) -> Tuple[str, str]:
    """Render c * x^power as a sign flag plus a signless term body."""
    if c.b == 0:
        neg = c.a < 0
        mag = -c.a if neg else c.a
        coeff = None if (mag == 1 and power > 0) else str(mag)
    elif c.a == 0:
        neg = c.b < 0
        coeff = str(Scalar(0, -c.b if neg else c.b, c.d))
    else:
        neg = False
        coeff = f"({c})"
    if power == 0:
        return ("-" if neg else "+"), (coeff if coeff is not None else "1")
    xs = "x" if power == 1 else f"x^{power}"
    body = xs if coeff is None else f"{coeff}*{xs}"
    return ("-" if neg else "+"), body


def poly_to_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts: List[Tuple[str, str]] = []
    for k in range(p.degree(), -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        parts.append(_scalar_coeff_str(c, k))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _is_single_term(p: Poly) -> bool:
    return sum(1 for c in p.coeffs if c) == 1


def _safe_after_div(ds: str) -> bool:
    # "/" binds like "*", so anything with a product or sum must be wrapped
    return not (ds.startswith("-") or any(ch in ds for ch in " *+"))


def ratfun_to_str(r: RatFun) -> str:
    """Canonical display: integer-cleared numerator over denominator.

    The representation parses back to the same function.
    """
    if r.is_zero():
        return "0"
    num_i, sn = clear_integer(r.num)
    den_i, sd = clear_integer(r.den)
    s = sn / sd
    num_i = num_i.scale(Fraction(s.numerator))
    den_i = den_i.scale(Fraction(s.denominator))
    # sign normalization: leading denominator coefficient positive
    lead = den_i.leading()
    if lead.sort_key() < ZERO.sort_key():
        num_i, den_i = -num_i, -den_i
    if den_i == Poly.constant(1):
        return poly_to_str(num_i)
    ns = poly_to_str(num_i)
    ds = poly_to_str(den_i)
    if not _is_single_term(num_i):
        ns = f"({ns})"
    if not _safe_after_div(ds):
        ds = f"({ds})"
    return f"{ns}/{ds}"
