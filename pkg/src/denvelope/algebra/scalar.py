"""Exact scalars: rationals and quadratic extensions Q(sqrt(d)).

A Scalar stores a + b*sqrt(d) as two Fractions plus the radicand d.
d = None means plain Q, d = -1 is the Gaussian field, any other
squarefree integer gives Q(sqrt(d)).  Scalars from different radicands
refuse to mix; rationals coerce into any field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

import mpmath

RatLike = Union[int, Fraction]

_CHECKED_RADICANDS: set = set()


class FieldMismatch(ValueError):
    """Two scalars live in different quadratic extensions."""


def validate_radicand(d: int) -> int:
    """Check that d is a squarefree integer other than 0 and 1."""
    if d in _CHECKED_RADICANDS:
        return d
    if not isinstance(d, int) or isinstance(d, bool):
        raise ValueError("field radicand must be an integer")
    if d in (0, 1):
        raise ValueError("field radicand must not be 0 or 1")
    n = abs(d)
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                raise ValueError(f"field radicand must be squarefree, got {d}")
        else:
            p += 1
    _CHECKED_RADICANDS.add(d)
    return d


def radical_symbol(d: int) -> str:
    if d == -1:
        return "i"
    if d > 0:
        return f"sqrt{d}"
    return f"sqrtm{abs(d)}"


class Scalar:
    """Immutable element of Q or Q(sqrt(d)), exact arithmetic throughout."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RatLike = 0, b: RatLike = 0, d: Optional[int] = None):
        a = Fraction(a)
        b = Fraction(b)
        if b == 0:
            d = None
        elif d is None:
            raise ValueError("irrational part requires a radicand")
        else:
            validate_radicand(d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- field bookkeeping ------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def _join(self, other: "Scalar") -> Optional[int]:
        if self.d is None:
            return other.d
        if other.d is None or other.d == self.d:
            return self.d
        raise FieldMismatch(
            f"cannot mix sqrt({self.d}) and sqrt({other.d}) scalars"
        )

    @staticmethod
    def coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(value)
        raise TypeError(f"cannot coerce {value!r} to Scalar")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._join(other)
        return Scalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._join(other)
        a = self.a * other.a
        if self.b != 0 and other.b != 0:
            a += self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return Scalar(a, b, d)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """a^2 - d*b^2, the field norm down to Q."""
        if self.b == 0:
            return self.a * self.a
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("scalar division by zero")
        if self.b == 0:
            return Scalar(1 / self.a)
        n = self.norm()
        # norm cannot vanish: d squarefree is never a square of a rational
        return Scalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- predicates and order ----------------------------------------------

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.b != other.b:
            return False
        if self.b != 0 and self.d != other.d:
            return False
        return self.a == other.a

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sort_key(self):
        return (self.a, self.b, self.d if self.d is not None else 0)

    def real_sign(self) -> int:
        """Sign of the real number a + b*sqrt(d).  Requires d > 0 or rational."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.d < 0:
            raise ValueError("real_sign needs a real embedding")
        u, v = self.a, self.b
        if u >= 0 and v >= 0:
            return 1 if (u > 0 or v > 0) else 0
        if u <= 0 and v <= 0:
            return -1
        lhs = u * u
        rhs = v * v * self.d
        if u > 0:  # v < 0
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return 1 if rhs > lhs else (-1 if rhs < lhs else 0)

    def abs_compare_one(self) -> int:
        """-1, 0 or 1 as |self| is below, at or above 1 (exact)."""
        if self.b == 0:
            q = self.a * self.a
            return (q > 1) - (q < 1)
        if self.d < 0:
            # |a + b i sqrt(|d|)|^2 = a^2 + |d| b^2
            q = self.a * self.a - self.d * self.b * self.b
            return (q > 1) - (q < 1)
        above = (self - 1).real_sign() > 0 or (self + 1).real_sign() < 0
        if above:
            return 1
        on = (self - 1).real_sign() == 0 or (self + 1).real_sign() == 0
        return 0 if on else -1

    # -- numeric embedding ---------------------------------------------------

    def to_mpc(self, precision: int = 53) -> "mpmath.mpc":
        with mpmath.workprec(precision):
            re = mpmath.mpf(self.a.numerator) / self.a.denominator
            if self.b == 0:
                return mpmath.mpc(re)
            bb = mpmath.mpf(self.b.numerator) / self.b.denominator
            root = mpmath.sqrt(mpmath.mpf(abs(self.d)))
            if self.d > 0:
                return mpmath.mpc(re + bb * root)
            return mpmath.mpc(re, bb * root)

    # -- display ------------------------------------------------------------

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sym = radical_symbol(self.d)
        if self.b == 1:
            irr = sym
        elif self.b == -1:
            irr = f"-{sym}"
        else:
            irr = f"{self.b}*{sym}"
        if self.a == 0:
            return irr
        sign = "-" if self.b < 0 else "+"
        mag = irr.lstrip("-")
        return f"{self.a} {sign} {mag}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


ZERO = Scalar(0)
ONE = Scalar(1)


def scalar_from_parts(a: RatLike, b: RatLike = 0, d: Optional[int] = None) -> Scalar:
    return Scalar(a, b, d)
