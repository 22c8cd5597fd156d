"""Truncated power series with exact or big-float coefficients.

Coefficients are Scalars in exact mode or mpmath numbers in numeric
mode; the arithmetic only uses +, -, *, / , integer multiples and truth
testing, so the two modes share all code paths.  A series knows its
truncation order (highest retained power); binary operations truncate to
the smaller order of the two operands.
"""

from __future__ import annotations

from typing import List, Sequence

import mpmath

from .algebra.scalar import Scalar


class TruncatedSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant term")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def _zero(self):
        c = self.coeffs[0]
        return c - c

    @staticmethod
    def constant(value, order: int) -> "TruncatedSeries":
        zero = value - value
        return TruncatedSeries((value,) + (zero,) * order)

    @staticmethod
    def identity(order: int, one=None) -> "TruncatedSeries":
        one = Scalar(1) if one is None else one
        zero = one - one
        if order < 1:
            raise ValueError("identity needs order >= 1")
        return TruncatedSeries((zero, one) + (zero,) * (order - 1))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1))
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        zero = self._zero()
        out: List = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if not a:
                continue
            for j in range(0, n - i + 1):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(tuple(v * c for v in self.coeffs))

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 series")
        return TruncatedSeries(
            tuple(self.coeffs[k] * k for k in range(1, self.order + 1))
        )

    def scale_argument(self, lam) -> "TruncatedSeries":
        """The series of s(lam * u)."""
        out = []
        power = None
        for k, c in enumerate(self.coeffs):
            power = power * lam if k else lam**0
            out.append(c * power)
        return TruncatedSeries(out)

    # -- composition and inverses ------------------------------------------------

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(u)); the inner constant term must vanish."""
        if inner.coeffs[0]:
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        zero = self._zero()
        acc = TruncatedSeries.constant(zero, n)
        for c in reversed(self.coeffs[: n + 1]):
            acc = acc * inner + TruncatedSeries.constant(c, n)
        return acc

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse by Newton doubling."""
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("reciprocal of a series with zero constant term")
        n = self.order
        g = TruncatedSeries.constant(_invert_coeff(c0), 0)
        while g.order < n:
            target = min(2 * g.order + 1, n)
            a = self.truncate(target)
            gp = _pad(g, target)
            g = (gp.scale(2) - a * gp * gp).truncate(target)
        return g

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return (self.truncate(n) * other.truncate(n).reciprocal()).truncate(n)

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse by Newton doubling.

        Needs zero constant term and an invertible linear term.  The
        high padding of the derivative never leaks into retained orders
        because the error term it multiplies has matching valuation.
        """
        if self.coeffs[0]:
            raise ValueError("reversion needs zero constant term")
        if self.order < 1 or not self.coeffs[1]:
            raise ValueError("reversion needs an invertible linear term")
        n = self.order
        zero = self._zero()
        b1 = _invert_coeff(self.coeffs[1])
        one = b1 * self.coeffs[1]
        g = TruncatedSeries((zero, b1))
        fprime = self.derivative()
        while g.order < n:
            order = min(2 * g.order, n)
            gp = _pad(g, order)
            f_at = self.truncate(order).compose(gp)
            err = f_at - TruncatedSeries.identity(order, one=one)
            fp_at = _pad(fprime, order).compose(gp)
            g = (gp - err * fp_at.reciprocal()).truncate(order)
        return g

    # -- reductions ------------------------------------------------------------

    def max_abs_tail(self, start: int = 0, precision: int = 53):
        """max |coefficient| over powers >= start, as an mpf."""
        with mpmath.workprec(precision):
            best = mpmath.mpf(0)
            for c in self.coeffs[start:]:
                v = c.to_mpc(precision) if isinstance(c, Scalar) else mpmath.mpc(c)
                best = max(best, abs(v))
            return best

    def is_exactly_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        more = " ..." if self.order > 5 else ""
        return f"Series[{shown}{more}]"


def _pad(s: TruncatedSeries, order: int) -> TruncatedSeries:
    if s.order >= order:
        return s.truncate(order)
    zero = s.coeffs[0] - s.coeffs[0]
    return TruncatedSeries(tuple(s.coeffs) + (zero,) * (order - s.order))


def _invert_coeff(c):
    if isinstance(c, Scalar):
        return c.inverse()
    return 1 / c


def series_of_ratfun(r, s: TruncatedSeries) -> TruncatedSeries:
    """The series of r(s(u)), allowing a nonzero constant term in s.

    The denominator of r must not vanish at the constant term of s.
    Exactness follows the coefficient type of s.
    """
    exact = isinstance(s.coeffs[0], Scalar)
    zero = s._zero()

    def plug(poly) -> TruncatedSeries:
        acc = TruncatedSeries.constant(zero, s.order)
        for k in range(poly.degree(), -1, -1):
            c = poly.coeff(k)
            cv = c if exact else c.to_mpc(mpmath.mp.prec)
            acc = acc * s + TruncatedSeries.constant(cv, s.order)
        return acc

    num = plug(r.num)
    den = plug(r.den)
    if not den.coeffs[0]:
        raise ZeroDivisionError("denominator vanishes at the series center")
    return num * den.reciprocal()


def schwarzian_series(s: TruncatedSeries) -> TruncatedSeries:
    """2 s'''/s' - 3 (s''/s')^2, valid to order - 3."""
    if s.order < 4:
        raise ValueError("schwarzian needs order at least 4")
    n = s.order - 3
    s1 = s.derivative()
    s2 = s1.derivative()
    s3 = s2.derivative()
    r1 = (s3 / s1).truncate(n)
    r2 = s2 / s1
    return (r1.scale(2) - (r2 * r2).truncate(n).scale(3)).truncate(n)


def affine_series(s: TruncatedSeries) -> TruncatedSeries:
    """s''/s', valid to order - 2."""
    if s.order < 3:
        raise ValueError("affine coefficient needs order at least 3")
    s1 = s.derivative()
    s2 = s1.derivative()
    return (s2 / s1).truncate(s.order - 2)
