"""Dynamical bookkeeping for a rational self-map of P1.

Everything here is exact: critical points come from the Wronskian of
numerator and denominator (whose vanishing order is e - 1 at every
finite point, poles included), the point at infinity is handled through
the chart flip x -> 1/x, and orbits of divisors ride on the exact
pushforward.  Numeric data only enters for fixed points that do not live
in the configured field, and every numeric value is tagged as such.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple, Union

import mpmath

from .algebra.divisor import Divisor
from .algebra.poly import (
    Poly,
    complex_roots,
    exact_roots,
    ord_at_factor,
    squarefree_decomposition,
    squarefree_part,
)
from .algebra.ratfun import INF, DegreeCapExceeded, PointP1, RatFun
from .algebra.scalar import ONE, ZERO, Scalar

_FLIP_CACHE = None


def _flip() -> RatFun:
    global _FLIP_CACHE
    if _FLIP_CACHE is None:
        _FLIP_CACHE = RatFun(Poly.constant(1), Poly.x())
    return _FLIP_CACHE


class FixedPointData:
    """A periodic point with its multiplier.

    point is a PointP1 in exact mode or an mpc in numeric mode;
    multiplier follows suit.  multiplicity is the local intersection
    multiplicity of the fixed-point equation of the n-th iterate.
    """

    __slots__ = ("point", "multiplier", "multiplicity", "period", "exact")

    def __init__(self, point, multiplier, multiplicity: int, period: int, exact: bool):
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "multiplier", multiplier)
        object.__setattr__(self, "multiplicity", multiplicity)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("FixedPointData is immutable")

    def is_repelling(self) -> bool:
        if self.exact:
            return self.multiplier.abs_compare_one() > 0
        return abs(self.multiplier) > 1

    def __repr__(self):
        tag = "exact" if self.exact else "numeric"
        return (
            f"FixedPoint({self.point}, mult={self.multiplier}, "
            f"m={self.multiplicity}, period={self.period}, {tag})"
        )


# -- local structure ----------------------------------------------------------


def local_degree(r: RatFun, p) -> int:
    """Ramification index of r at p (1 means unramified)."""
    if not isinstance(p, PointP1):
        p = PointP1.of(p)
    if r.is_constant():
        raise ValueError("local degree needs a nonconstant map")
    if p.is_infinity:
        return local_degree(r.compose(_flip()), PointP1.of(ZERO))
    v = r.evaluate(p)
    if v.is_infinity:
        target = r.den
    else:
        target = r.num - r.den.scale(v.value)
    return ord_at_factor(target, Poly.of(-p.value, 1))


def critical_divisor(r: RatFun) -> Divisor:
    """Critical points with multiplicity e - 1, infinity included."""
    if r.degree() < 1:
        raise ValueError("critical divisor needs a nonconstant map")
    w = r.num.derivative() * r.den - r.num * r.den.derivative()
    pairs = []
    if not w.is_zero():
        pairs = [(f, m) for f, m in squarefree_decomposition(w)]
    e_inf = local_degree(r, INF)
    return Divisor.from_pairs(pairs, e_inf - 1)


def ramification_total(r: RatFun) -> int:
    """Sum of (e - 1); equals 2 deg - 2 for any nonconstant map."""
    return critical_divisor(r).total_degree()


# -- orbits of divisors ------------------------------------------------------------


def postcritical_closure(
    r: RatFun, support_cap: int = 64, iteration_cap: int = 8
) -> Tuple[Divisor, bool, int]:
    """Forward closure of the critical values.

    Returns (divisor, overflowed, iterations).  Overflow means either the
    support grew past support_cap or the orbit failed to stabilize within
    iteration_cap pushforward rounds; the divisor returned is the partial
    closure either way, with all multiplicities flattened to one.
    """
    crit = critical_divisor(r)
    flat = Divisor.from_pairs(((f, 1) for f, _ in crit.factors),
                              1 if crit.inf_mult else 0)
    current = flat.pushforward(r)
    for rounds in range(1, iteration_cap + 1):
        if current.support_degree() > support_cap:
            return current, True, rounds
        bigger = current.union(current.pushforward(r))
        if bigger == current:
            return current, False, rounds
        current = bigger
    # never stabilized: that counts as an overflow of the iteration budget
    return current, True, iteration_cap


def fixed_divisor(r: RatFun) -> Divisor:
    """Zero divisor of r(x) - x, multiplicities included, infinity too."""
    g = r.num - Poly.x() * r.den
    d = r.degree()
    pairs = list(squarefree_decomposition(g)) if not g.is_zero() else []
    inf_mult = (d + 1) - g.degree() if not g.is_zero() else d + 1
    return Divisor.from_pairs(pairs, max(inf_mult, 0))


def candidate_pole_divisor(
    r: RatFun, support_cap: int = 64, iteration_cap: int = 8
) -> Tuple[Optional[Divisor], bool]:
    """Where coefficient functions for r are allowed to have poles.

    Degree >= 2: postcritical closure, critical points, poles of r and
    infinity.  Degree 1: the fixed points and infinity.  Returns
    (divisor, postcritical_overflow); the divisor is None on overflow.
    """
    if r.degree() < 1:
        raise ValueError("needs a nonconstant map")
    if r.degree() == 1:
        fixed = fixed_divisor(r)
        flat = Divisor.from_pairs(
            ((f, 1) for f, _ in fixed.factors), 1
        )
        return flat, False
    pc, overflow, _ = postcritical_closure(r, support_cap, iteration_cap)
    if overflow:
        return None, True
    crit = critical_divisor(r)
    extra = Divisor.from_pairs(
        [(f, 1) for f, _ in crit.factors]
        + ([(squarefree_part(r.den), 1)] if r.den.degree() > 0 else []),
        1,
    )
    return pc.union(extra), False


# -- fixed and periodic points ---------------------------------------------------------


def fixed_points(
    r: RatFun,
    period: int = 1,
    precision: int = 128,
    degree_cap: int = 4096,
) -> List[FixedPointData]:
    """Fixed points of the period-th iterate, exact where possible.

    Exact points carry exact multipliers of the full cycle map; the rest
    are reported numerically at the requested precision.  Multiplicities
    sum to deg^period + 1 over P1 (the infinity slot included).
    """
    if r.degree() < 1:
        raise ValueError("fixed points need a nonconstant map")
    f = r.iterate(period, degree_cap) if period > 1 else r
    g = f.num - Poly.x() * f.den
    d_iter = f.degree()
    out: List[FixedPointData] = []
    if g.is_zero():
        raise ValueError("the identity map fixes everything")
    exact, cofactor = exact_roots(g, r.field_radicand(), precision)
    fprime = f.derivative()
    for root, mult in exact:
        lam = fprime.evaluate(PointP1.of(root))
        lam_val = lam.value if not lam.is_infinity else None
        if lam_val is None:
            raise ArithmeticError("multiplier blew up at a finite fixed point")
        out.append(FixedPointData(PointP1.of(root), lam_val, mult, period, True))
    if cofactor.degree() > 0:
        with mpmath.workprec(precision):
            for z, mult in complex_roots(cofactor, precision):
                lam = fprime.eval_mpc(z, precision)
                out.append(FixedPointData(mpmath.mpc(z), lam, mult, period, False))
    inf_mult = (d_iter + 1) - g.degree()
    if inf_mult > 0:
        flip = _flip()
        t = RatFun.constant(1) / f.compose(flip)
        lam = t.derivative().evaluate(PointP1.of(ZERO))
        if lam.is_infinity:
            raise ArithmeticError("multiplier blew up at infinity")
        out.append(FixedPointData(INF, lam.value, inf_mult, period, True))
    return out


def repelling_point_avoiding(
    r: RatFun,
    avoid: Divisor,
    period_cap: int = 6,
    precision: int = 128,
    allow_numeric: bool = True,
    degree_cap: int = 4096,
) -> FixedPointData:
    """A repelling periodic point outside the avoid divisor.

    Scans periods in increasing order; at each period exact points in the
    configured field are preferred, then (if allowed) numeric ones.  The
    error message below is part of the contract.
    """
    d = r.degree()
    if d < 1:
        raise ValueError("needs a nonconstant map")
    with mpmath.workprec(precision):
        tol = mpmath.mpf(2) ** (-(precision // 3))
    for n in range(1, period_cap + 1):
        if d >= 2 and d**n > degree_cap:
            break
        try:
            pts = fixed_points(r, n, precision, degree_cap)
        except DegreeCapExceeded:
            break
        exact_hits = [
            p
            for p in pts
            if p.exact
            and not p.point.is_infinity
            and p.is_repelling()
            and not avoid.contains_point(p.point)
        ]
        exact_hits.sort(key=lambda p: p.point.sort_key())
        if exact_hits:
            return exact_hits[0]
        if allow_numeric:
            numeric_hits = [
                p
                for p in pts
                if not p.exact and p.is_repelling()
                and not _near_divisor(p.point, avoid, tol, precision)
            ]
            numeric_hits.sort(
                key=lambda p: (mpmath.re(p.point), mpmath.im(p.point))
            )
            if numeric_hits:
                return numeric_hits[0]
    raise ValueError("no exact-field repelling point found; retry numerically or raise cap")


def _near_divisor(z, d: Divisor, tol, precision: int) -> bool:
    with mpmath.workprec(precision):
        for f, _ in d.factors:
            if abs(f.eval_mpc(z, precision)) < tol:
                return True
    return False


# -- exceptional set --------------------------------------------------------------------


def exceptional_set(r: RatFun) -> Divisor:
    """The largest finite totally invariant set (at most two points).

    Candidates are the totally ramified points: Wronskian factors of
    order exactly deg - 1 plus infinity when the map is totally ramified
    there.  The exceptional set is the part of that candidate set whose
    forward orbit stays inside it; total preimage counting makes
    backward invariance automatic.
    """
    d = r.degree()
    if d < 2:
        raise ValueError("exceptional set needs degree at least 2")
    w = r.num.derivative() * r.den - r.num * r.den.derivative()
    cands: List[Divisor] = []
    if not w.is_zero():
        for f, m in squarefree_decomposition(w):
            if m == d - 1 and f.degree() <= 2:
                cands.append(Divisor.from_pairs([(f, 1)]))
    if local_degree(r, INF) == d:
        cands.append(Divisor.from_pairs([], 1))
    kept = list(cands)
    changed = True
    while changed and kept:
        changed = False
        universe = Divisor.empty()
        for c in kept:
            universe = universe.union(c)
        for i, c in enumerate(kept):
            img = c.pushforward(r)
            if not img.support_subset(universe):
                kept.pop(i)
                changed = True
                break
    out = Divisor.empty()
    for c in kept:
        out = out.union(c)
    return out
