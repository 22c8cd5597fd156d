"""Effective divisors on P1 with exact factor bookkeeping.

A divisor is a finite set of closed points with positive multiplicities.
Finite points are stored as monic squarefree pairwise-coprime polynomial
factors (one factor can bundle a Galois orbit), infinity separately.
Pushforward and pullback along a rational map stay exact: images are cut
out by a resultant in the image variable, preimages by clearing the
composition's denominator.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .poly import (
    Poly,
    coprime_refine,
    poly_gcd,
    poly_sort_key,
    resultant_coeff_lists,
    squarefree_part,
)
from .ratfun import INF, PointP1, RatFun
from .scalar import ONE, ZERO


class Divisor:
    __slots__ = ("factors", "inf_mult")

    def __init__(self, factors: Sequence[Tuple[Poly, int]] = (), inf_mult: int = 0):
        object.__setattr__(self, "factors", tuple(factors))
        object.__setattr__(self, "inf_mult", int(inf_mult))

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    @staticmethod
    def from_pairs(pairs: Iterable[Tuple[Poly, int]], inf_mult: int = 0) -> "Divisor":
        """Normalize arbitrary factor pairs to the coprime canonical form.

        Where input factors overlap, the refined piece keeps the largest
        multiplicity (set-union semantics).
        """
        clean = [(f.monic(), m) for f, m in pairs if f.degree() > 0 and m > 0]
        basis = coprime_refine([f for f, _ in clean])
        out = []
        for b in basis:
            mult = 0
            for f, m in clean:
                if (f % b).is_zero():
                    mult = max(mult, m)
            if mult:
                out.append((b, mult))
        return Divisor(tuple(out), max(0, inf_mult))

    @staticmethod
    def from_points(points: Iterable, mult: int = 1) -> "Divisor":
        pairs = []
        inf = 0
        for p in points:
            if isinstance(p, PointP1) and p.is_infinity:
                inf = mult
            else:
                v = p.value if isinstance(p, PointP1) else p
                pairs.append((Poly.of(-v, 1), mult))
        return Divisor.from_pairs(pairs, inf)

    @staticmethod
    def empty() -> "Divisor":
        return Divisor()

    # -- structure -------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.factors and self.inf_mult == 0

    def support_degree(self) -> int:
        """Number of geometric points in the support."""
        total = sum(f.degree() for f, _ in self.factors)
        return total + (1 if self.inf_mult else 0)

    def total_degree(self) -> int:
        """Degree counted with multiplicities."""
        total = sum(f.degree() * m for f, m in self.factors)
        return total + self.inf_mult

    def contains_point(self, p) -> bool:
        if not isinstance(p, PointP1):
            p = PointP1.of(p)
        if p.is_infinity:
            return self.inf_mult > 0
        return any(not f.evaluate(p.value) for f, _ in self.factors)

    def mult_at(self, p) -> int:
        if not isinstance(p, PointP1):
            p = PointP1.of(p)
        if p.is_infinity:
            return self.inf_mult
        for f, m in self.factors:
            if not f.evaluate(p.value):
                return m
        return 0

    def support_poly(self) -> Poly:
        out = Poly.constant(1)
        for f, _ in self.factors:
            out = out * f
        return out

    def support_subset(self, other: "Divisor") -> bool:
        """Is every point of self a point of other (multiplicities ignored)?"""
        if self.inf_mult and not other.inf_mult:
            return False
        prod = other.support_poly()
        for f, _ in self.factors:
            h = f
            while h.degree() > 0:
                g = poly_gcd(h, prod)
                if g.degree() == 0:
                    return False
                h = h.exact_div(g)
        return True

    def union(self, other: "Divisor") -> "Divisor":
        return Divisor.from_pairs(
            list(self.factors) + list(other.factors),
            max(self.inf_mult, other.inf_mult),
        )

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.factors == other.factors and self.inf_mult == other.inf_mult

    def __hash__(self):
        return hash((self.factors, self.inf_mult))

    # -- transport along a map ------------------------------------------------

    def pushforward(self, r: RatFun) -> "Divisor":
        if r.is_constant():
            if self.is_empty():
                return Divisor()
            return Divisor.from_points([PointP1.of(r.constant_value())])
        pairs: List[Tuple[Poly, int]] = []
        inf = 0
        P, Q = r.num, r.den
        for f, m in self.factors:
            if poly_gcd(f, Q).degree() > 0:
                inf = max(inf, m)
            img = _image_poly(f, P, Q)
            if img.degree() > 0:
                pairs.append((squarefree_part(img), m))
        if self.inf_mult:
            v = r.evaluate(INF)
            if v.is_infinity:
                inf = max(inf, self.inf_mult)
            else:
                pairs.append((Poly.of(-v.value, 1), self.inf_mult))
        return Divisor.from_pairs(pairs, inf)

    def pullback(self, r: RatFun) -> "Divisor":
        if r.is_constant():
            raise ValueError("pullback along a constant map is not a divisor")
        pairs: List[Tuple[Poly, int]] = []
        inf = 0
        P, Q = r.num, r.den
        v_inf = r.evaluate(INF)
        for f, m in self.factors:
            pre = _compose_numerator(f, P, Q)
            if pre.degree() > 0:
                pairs.append((squarefree_part(pre), m))
            if not v_inf.is_infinity and not f.evaluate(v_inf.value):
                inf = max(inf, m)
        if self.inf_mult:
            if Q.degree() > 0:
                pairs.append((squarefree_part(Q), self.inf_mult))
            if v_inf.is_infinity:
                inf = max(inf, self.inf_mult)
        return Divisor.from_pairs(pairs, inf)

    # -- display -----------------------------------------------------------------

    def __str__(self):
        bits = []
        for f, m in sorted(self.factors, key=lambda t: poly_sort_key(t[0])):
            fs = str(f)
            bits.append(fs if m == 1 else f"({fs})^{m}")
        if self.inf_mult == 1:
            bits.append("inf")
        elif self.inf_mult > 1:
            bits.append(f"inf^{self.inf_mult}")
        return "{" + ", ".join(bits) + "}"

    def __repr__(self):
        return f"Divisor{self}"

    def to_json(self) -> list:
        out = [[str(f), m] for f, m in self.factors]
        if self.inf_mult:
            out.append(["inf", self.inf_mult])
        return out


def _image_poly(f: Poly, P: Poly, Q: Poly) -> Poly:
    """Polynomial in y whose roots are the finite images under P/Q of roots of f.

    Computed as a resultant in x of f(x) and y*Q(x) - P(x), taken over the
    rational function field in y.
    """
    deg = max(P.degree(), Q.degree())
    second = [
        RatFun(Poly.of(-P.coeff(k), Q.coeff(k))) for k in range(deg + 1)
    ]
    first = [RatFun.constant(c) for c in f.coeffs]
    res = resultant_coeff_lists(first, second, RatFun.constant(1))
    if not res.is_poly():
        raise ArithmeticError("image resultant is not polynomial")
    return res.num


def _compose_numerator(f: Poly, P: Poly, Q: Poly) -> Poly:
    """Numerator of f(P/Q): sum of c_k P^k Q^(deg f - k)."""
    n = f.degree()
    acc = Poly()
    for k, c in enumerate(f.coeffs):
        if c:
            acc = acc + (P**k) * (Q ** (n - k)).scale(c)
    return acc
