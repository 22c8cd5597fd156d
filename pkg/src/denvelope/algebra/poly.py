"""Dense univariate polynomials over exact scalars.

Coefficients are stored low degree first with no trailing zeros, so the
zero polynomial is the empty tuple and degree() returns -1 for it.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath

from .scalar import ONE, ZERO, Scalar


class PrecisionError(ArithmeticError):
    """Numeric root isolation failed at the requested precision."""


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Scalar.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def of(*coeffs) -> "Poly":
        return Poly(coeffs)

    @staticmethod
    def constant(c) -> "Poly":
        return Poly((Scalar.coerce(c),))

    @staticmethod
    def x() -> "Poly":
        return Poly((ZERO, ONE))

    @staticmethod
    def monomial(k: int, c=1) -> "Poly":
        return Poly((ZERO,) * k + (Scalar.coerce(c),))

    # -- basics ---------------------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_term(self) -> Scalar:
        return self.coeffs[0] if self.coeffs else ZERO

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Scalar)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            (self.coeff(k) + other.coeff(k) for k in range(n))
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        cleared = _cleared_ints(self)
        if cleared is not None:
            cleared_o = _cleared_ints(other)
            if cleared_o is not None:
                xa, da = cleared
                xb, db = cleared_o
                prod = [0] * (len(xa) + len(xb) - 1)
                for i, ci in enumerate(xa):
                    if ci:
                        for j, cj in enumerate(xb):
                            if cj:
                                prod[i + j] += ci * cj
                den = da * db
                return Poly([Fraction(v, den) for v in prod])
        out: List[Scalar] = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(other.coeffs):
                if cj:
                    out[i + j] = out[i + j] + ci * cj
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Scalar.coerce(c)
        return Poly(tuple(x * c for x in self.coeffs))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Poly((ONE,))
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        dn, dd = len(self.coeffs) - 1, other.degree()
        if dn < dd:
            return Poly(), self
        cleared = _cleared_ints(self)
        if cleared is not None:
            cleared_o = _cleared_ints(other)
            if cleared_o is not None:
                xa, da = cleared
                xb, db = cleared_o
                quo, rem, scale = _int_pdivmod(xa, xb)
                qden = scale * da
                return (Poly([Fraction(v * db, qden) for v in quo]),
                        Poly([Fraction(v, qden) for v in rem]))
        rem = list(self.coeffs)
        inv_lead = other.leading().inverse()
        quot = [ZERO] * (dn - dd + 1)
        for k in range(dn - dd, -1, -1):
            c = rem[k + dd] * inv_lead
            quot[k] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return Poly(quot), Poly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        if lead == ONE:
            return self
        inv = lead.inverse()
        return Poly(tuple(c * inv for c in self.coeffs))

    def derivative(self) -> "Poly":
        return Poly(tuple(self.coeffs[k] * k for k in range(1, len(self.coeffs))))

    def compose(self, inner: "Poly") -> "Poly":
        result = Poly()
        for c in reversed(self.coeffs):
            result = result * inner + Poly.constant(c)
        return result

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, point) -> Scalar:
        point = Scalar.coerce(point)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def eval_mpc(self, z, precision: int = 53):
        with mpmath.workprec(precision):
            acc = mpmath.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * z + c.to_mpc(precision)
            return acc

    # -- misc -------------------------------------------------------------------

    def field_radicand(self) -> Optional[int]:
        for c in self.coeffs:
            if c.d is not None:
                return c.d
        return None

    def __str__(self):
        from .ratfun import poly_to_str

        return poly_to_str(self)

    def __repr__(self):
        return f"Poly[{self}]"


def _coerce_poly(value) -> Optional[Poly]:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction, Scalar)):
        return Poly.constant(value)
    return None


# -- gcd machinery ----------------------------------------------------------------


def _cleared_ints(p: Poly) -> Optional[Tuple[List[int], int]]:
    """(integer coefficients, common denominator), or None on radical fields."""
    den_lcm = 1
    for c in p.coeffs:
        if c.d is not None:
            return None
        q = c.a.denominator
        den_lcm = den_lcm * q // int_gcd(den_lcm, q)
    return [c.a.numerator * (den_lcm // c.a.denominator) for c in p.coeffs], den_lcm


def _int_coeffs(p: Poly) -> Optional[List[int]]:
    cleared = _cleared_ints(p)
    return cleared[0] if cleared is not None else None


def _int_primitive(r: List[int]) -> List[int]:
    while r and not r[-1]:
        r.pop()
    g = 0
    for v in r:
        g = int_gcd(g, v)
    return [v // g for v in r] if g > 1 else r


def _int_prem(u: List[int], v: List[int]) -> List[int]:
    """Pseudo-remainder of u by v over the integers (exact, no fractions)."""
    r = list(u)
    dv = len(v) - 1
    lv = v[-1]
    while len(r) - 1 >= dv:
        c = r[-1]
        if c:
            r = [lv * x for x in r]
            shift = len(r) - 1 - dv
            for j, vc in enumerate(v):
                r[shift + j] -= c * vc
        r.pop()
    return r


def _int_pdivmod(u: List[int], v: List[int]) -> Tuple[List[int], List[int], int]:
    """Fraction-free division: returns (q, r, s) with s*u = q*v + r over Z."""
    dv = len(v) - 1
    lv = v[-1]
    r = list(u)
    q = [0] * (len(u) - dv)
    scale = 1
    while len(r) - 1 >= dv:
        c = r[-1]
        if c:
            scale *= lv
            shift = len(r) - 1 - dv
            for i in range(len(q)):
                q[i] *= lv
            q[shift] += c
            r = [lv * x for x in r]
            for j, vc in enumerate(v):
                r[shift + j] -= c * vc
        r.pop()
    return q, r, scale


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; primitive remainder chain over Z, Euclid on radical fields."""
    ia, ib = _int_coeffs(a), _int_coeffs(b)
    if ia is not None and ib is not None:
        ia, ib = _int_primitive(ia), _int_primitive(ib)
        while ib:
            ia, ib = ib, _int_primitive(_int_prem(ia, ib))
        return Poly(ia).monic()
    a, b = a.monic() if a else a, b.monic() if b else b
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    if a.is_zero():
        return a
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    g = poly_gcd(a, b)
    return (a * b).exact_div(g).monic()


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    if p.degree() == 0:
        return Poly((ONE,))
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


def squarefree_decomposition(p: Poly) -> List[Tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree factors with multiplicities."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    p = p.monic()
    if p.degree() == 0:
        return []
    out: List[Tuple[Poly, int]] = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = poly_gcd(b, d)
        if a.degree() > 0:
            out.append((a.monic(), i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


# -- resultants --------------------------------------------------------------------


def resultant_coeff_lists(a: Sequence, b: Sequence, one):
    """Resultant of two coefficient lists (low degree first) over any field.

    Coefficient objects must support +, -, *, /, ** and truth testing.
    Sign convention: res(x - a, x - b) = a - b.
    """

    def trim(cs):
        cs = list(cs)
        while cs and not cs[-1]:
            cs.pop()
        return cs

    a = trim(a)
    b = trim(b)
    if not a or not b:
        raise ValueError("resultant of the zero polynomial is undefined")
    res = one
    minus_one = -one
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return res * b[0] ** m
        # remainder of a modulo b, coefficients in the fraction field
        r = list(a)
        lead_inv = one / b[-1]
        for k in range(m - n, -1, -1):
            if k + n >= len(r):
                continue
            c = r[k + n] * lead_inv
            if c:
                for j in range(n + 1):
                    r[k + j] = r[k + j] - c * b[j]
        r = trim(r[:n])
        if not r:
            return one - one  # common factor, resultant vanishes
        k = len(r) - 1
        if (m * n) % 2:
            res = res * minus_one
        res = res * b[-1] ** (m - k)
        a, b = b, r


def resultant(p: Poly, q: Poly) -> Scalar:
    return resultant_coeff_lists(p.coeffs, q.coeffs, ONE)


# -- coprime refinement ---------------------------------------------------------------


def coprime_refine(polys: Iterable[Poly]) -> List[Poly]:
    """Split monic squarefree inputs into a pairwise-coprime basis.

    Every input is a product of basis elements; every basis element is
    monic, squarefree, nonconstant.  Output order is deterministic.
    """
    basis: List[Poly] = []
    for p in polys:
        if p.is_zero() or p.degree() == 0:
            continue
        queue = [squarefree_part(p)]
        while queue:
            q = queue.pop()
            if q.degree() == 0:
                continue
            split = False
            for idx, b in enumerate(basis):
                g = poly_gcd(q, b)
                if g.degree() == 0:
                    continue
                if g.degree() < b.degree():
                    basis[idx] = g
                    basis.insert(idx + 1, b.exact_div(g).monic())
                rest = q.exact_div(g)
                if rest.degree() > 0:
                    queue.append(rest.monic())
                split = True
                break
            if not split:
                basis.append(q.monic())
    basis.sort(key=poly_sort_key)
    return basis


def ord_at_factor(p: Poly, f: Poly) -> int:
    """Largest e with f^e dividing p.  f nonconstant, p nonzero."""
    if p.is_zero():
        raise ValueError("ord of zero polynomial")
    e = 0
    while True:
        q, r = divmod(p, f)
        if not r.is_zero():
            return e
        p = q
        e += 1


def poly_sort_key(p: Poly):
    return (p.degree(), tuple(c.sort_key() for c in p.coeffs))


# -- integer form -----------------------------------------------------------------------


def clear_integer(p: Poly) -> Tuple[Poly, Fraction]:
    """Return (q, s) with p = s*q, q having coprime integer parts."""
    if p.is_zero():
        return p, Fraction(1)
    den_lcm = 1
    num_gcd = 0
    for c in p.coeffs:
        for part in (c.a, c.b):
            den_lcm = den_lcm * part.denominator // int_gcd(den_lcm, part.denominator)
            num_gcd = int_gcd(num_gcd, part.numerator)
    if num_gcd == 0:
        num_gcd = 1
    s = Fraction(num_gcd, den_lcm)
    inv = Fraction(den_lcm, num_gcd)
    return Poly(tuple(c * inv for c in p.coeffs)), s


# -- numeric and exact roots --------------------------------------------------------------


def complex_roots(p: Poly, precision: int = 128) -> List[Tuple["mpmath.mpc", int]]:
    """Roots as mpc values with multiplicities, deterministically ordered."""
    if p.is_zero():
        raise ValueError("zero polynomial has every point as a root")
    out = []
    with mpmath.workprec(precision):
        for factor, mult in squarefree_decomposition(p):
            if factor.degree() == 0:
                continue
            coeffs = [c.to_mpc(precision) for c in reversed(factor.coeffs)]
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=precision)
            except mpmath.libmp.NoConvergence as exc:
                raise PrecisionError(
                    f"root isolation did not converge at {precision} bits"
                ) from exc
            out.extend((mpmath.mpc(r), mult) for r in roots)
    out.sort(key=lambda t: (mpmath.re(t[0]), mpmath.im(t[0])))
    return out


def _mpf_to_fraction(x) -> Fraction:
    tup = mpmath.mpf(x)._mpf_
    sign, man, exp, _ = tup
    if man == 0:
        if tup == mpmath.libmp.fzero:
            return Fraction(0)
        raise PrecisionError("nonfinite value in rational reconstruction")
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


_DENOM_LADDER = (1, 8, 64, 10**4, 10**9, 10**15)


def _rational_candidates(x) -> List[Fraction]:
    f = _mpf_to_fraction(x)
    seen = []
    for cap in _DENOM_LADDER:
        c = f.limit_denominator(cap)
        if c not in seen:
            seen.append(c)
    return seen


def exact_roots(
    p: Poly, d: Optional[int] = None, precision: int = 128
) -> Tuple[List[Tuple[Scalar, int]], Poly]:
    """Roots of p in Q or Q(sqrt(d)), with multiplicity, plus the unexplained cofactor.

    Numeric isolation proposes candidates, exact evaluation confirms them,
    exact deflation measures multiplicity.  Sound by construction; at the
    default precision it finds every root of the sizes that occur here.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if d is None:
        d = p.field_radicand()
    roots: List[Tuple[Scalar, int]] = []
    work = p

    def try_root(cand: Scalar):
        nonlocal work
        if any(cand == r for r, _ in roots):
            return
        if p.evaluate(cand):
            return
        mult = 0
        div = Poly((-cand, ONE))
        while True:
            q, r = divmod(work, div)
            if not r.is_zero():
                break
            work = q
            mult += 1
        if mult:
            roots.append((cand, mult))

    # root at zero is free
    if p.coeffs and not p.coeffs[0]:
        try_root(ZERO)

    sf = squarefree_part(p)
    if sf.degree() > 0:
        numeric = [z for z, _ in complex_roots(sf, precision)]
        with mpmath.workprec(precision):
            tol = mpmath.mpf(2) ** (-precision // 2)
            for z in numeric:
                if abs(mpmath.im(z)) < tol:
                    for a in _rational_candidates(mpmath.re(z)):
                        try_root(Scalar(a))
                if d is not None and d < 0:
                    root_abs = mpmath.sqrt(mpmath.mpf(abs(d)))
                    for a in _rational_candidates(mpmath.re(z)):
                        for b in _rational_candidates(mpmath.im(z) / root_abs):
                            if b:
                                try_root(Scalar(a, b, d))
                if d is not None and d > 0:
                    rd = mpmath.sqrt(mpmath.mpf(d))
                    for w in numeric:
                        if w is z:
                            continue
                        if abs(mpmath.im(z)) > tol or abs(mpmath.im(w)) > tol:
                            continue
                        for a in _rational_candidates((mpmath.re(z) + mpmath.re(w)) / 2):
                            for b in _rational_candidates(
                                (mpmath.re(z) - mpmath.re(w)) / (2 * rd)
                            ):
                                if b:
                                    try_root(Scalar(a, b, d))
    roots.sort(key=lambda t: t[0].sort_key())
    return roots, work
