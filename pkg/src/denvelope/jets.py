"""Jets of local biholomorphisms of P1 and differential polynomials on them.

A k-jet is a source, a target and the first k derivatives of a germ
sending source to target, with invertibility meaning first derivative
nonzero.  Jets compose like the germs do; the chain-rule tables used for
composition are built once per order by symbolic differentiation of
z1*y1 and cached.

DiffPoly models differential polynomials in x, y, y1..yk whose
coefficients are rational in x and in y separately, which is exactly the
shape of the groupoid equations here.  The y1 exponent may be negative.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra.poly import Poly, poly_gcd
from .algebra.ratfun import PointP1, RatFun
from .algebra.scalar import ONE, ZERO, Scalar

# -- chain rule tables -------------------------------------------------------

# term: ((y exps), (z exps)) -> integer coefficient, tuples padded to order
_Table = Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int]


def _pad(t: Tuple[int, ...], m: int) -> Tuple[int, ...]:
    return t + (0,) * (m - len(t))


@lru_cache(maxsize=None)
def _composite_tables(order: int) -> Tuple[_Table, ...]:
    """Tables for d^m/dx^m of z(y(x)), m = 1..order, in y_i and z_j."""
    if order < 1:
        raise ValueError("order must be at least 1")
    tables: List[_Table] = [{((1,), (1,)): 1}]
    while len(tables) < order:
        m = len(tables)
        nxt: _Table = {}
        for (ys, zs), c in tables[-1].items():
            ys = _pad(ys, m + 1)
            zs = _pad(zs, m + 1)
            for i, a in enumerate(ys):
                if a:
                    ny = list(ys)
                    ny[i] -= 1
                    ny[i + 1] += 1
                    key = (tuple(ny), zs)
                    nxt[key] = nxt.get(key, 0) + c * a
            for j, b in enumerate(zs):
                if b:
                    nz = list(zs)
                    nz[j] -= 1
                    nz[j + 1] += 1
                    ny = list(ys)
                    ny[0] += 1
                    key = (tuple(ny), tuple(nz))
                    nxt[key] = nxt.get(key, 0) + c * b
        tables.append({k: v for k, v in nxt.items() if v})
    return tuple(tables)


def _eval_table(table: _Table, yvals: Sequence[Scalar], zvals: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for (ys, zs), c in table.items():
        term = Scalar(c)
        for i, a in enumerate(ys):
            if a:
                term = term * yvals[i] ** a
        for j, b in enumerate(zs):
            if b:
                term = term * zvals[j] ** b
        acc = acc + term
    return acc


# -- jets ------------------------------------------------------------------------


class Jet:
    """k-jet of an invertible germ: source, target, derivatives 1..k."""

    __slots__ = ("source", "target", "derivs")

    def __init__(self, source, target, derivs: Sequence):
        source = Scalar.coerce(source)
        target = Scalar.coerce(target)
        derivs = tuple(Scalar.coerce(v) for v in derivs)
        if not derivs:
            raise ValueError("a jet needs order at least 1")
        if not derivs[0]:
            raise ValueError("jet undefined at this point (not invertible)")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "derivs", derivs)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @property
    def order(self) -> int:
        return len(self.derivs)

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.derivs == other.derivs
        )

    def __hash__(self):
        return hash((self.source, self.target, self.derivs))

    def __repr__(self):
        ds = ", ".join(str(v) for v in self.derivs)
        return f"Jet({self.source} -> {self.target}; {ds})"


def jet_identity(x, order: int) -> Jet:
    return Jet(x, x, (ONE,) + (ZERO,) * (order - 1))


def jet_compose(first: Jet, second: Jet) -> Jet:
    """Jet of (second germ) after (first germ).

    The target of the first must be the source of the second, and both
    jets must carry the same order.
    """
    if first.target != second.source:
        raise ValueError("non-composable jets")
    if first.order != second.order:
        raise ValueError("jet orders differ")
    k = first.order
    tables = _composite_tables(k)
    derivs = tuple(
        _eval_table(tables[m], first.derivs, second.derivs) for m in range(k)
    )
    return Jet(first.source, second.target, derivs)


def jet_invert(j: Jet) -> Jet:
    """The jet of the inverse germ; order-m data solved triangularly."""
    k = j.order
    inv: List[Scalar] = [j.derivs[0].inverse()]
    tables = _composite_tables(k)
    for m in range(2, k + 1):
        # composite (j then inv) must match the identity at order m;
        # the unknown enters as z_m * y1^m
        trial = inv + [ZERO]
        val = _eval_table(tables[m - 1], j.derivs, trial)
        lead = j.derivs[0] ** m
        inv.append(-val / lead)
    return Jet(j.target, j.source, inv)


def jet_of_map(r: RatFun, p, order: int) -> Jet:
    """Jet of the rational map r at the finite point p."""
    if isinstance(p, PointP1):
        if p.is_infinity:
            raise ValueError("jet_of_map needs a finite base point")
        p = p.value
    p = Scalar.coerce(p)
    if not r.den.evaluate(p):
        raise ValueError("jet undefined at this point (pole)")
    derivs = []
    current = r
    target = r.eval_scalar(p)
    for i in range(order):
        current = current.derivative() if i else r.derivative()
        derivs.append(current.eval_scalar(p))
    if not derivs[0]:
        raise ValueError("jet undefined at this point (not invertible)")
    return Jet(p, target, derivs)


# -- differential polynomials ----------------------------------------------------


class XYC:
    """Coefficient rational in x and y separately: num(x, y)/(denx(x) deny(y)).

    num is a sparse bivariate dict (x_power, y_power) -> Scalar.  The pair
    of denominators is kept split; that class of functions is closed under
    the operations the groupoid equations need.
    """

    __slots__ = ("num", "denx", "deny")

    def __init__(self, num: Dict[Tuple[int, int], Scalar], denx: Poly, deny: Poly):
        num = {k: v for k, v in num.items() if v}
        if denx.is_zero() or deny.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        num, denx, deny = _xyc_reduce(num, denx, deny)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "denx", denx)
        object.__setattr__(self, "deny", deny)

    def __setattr__(self, name, value):
        raise AttributeError("XYC is immutable")

    # constructors

    @staticmethod
    def zero() -> "XYC":
        return XYC({}, Poly.constant(1), Poly.constant(1))

    @staticmethod
    def const(c) -> "XYC":
        c = Scalar.coerce(c)
        return XYC({(0, 0): c}, Poly.constant(1), Poly.constant(1))

    @staticmethod
    def from_x(r: RatFun) -> "XYC":
        num = {(i, 0): c for i, c in enumerate(r.num.coeffs)}
        return XYC(num, r.den, Poly.constant(1))

    @staticmethod
    def from_y(r: RatFun) -> "XYC":
        num = {(0, j): c for j, c in enumerate(r.num.coeffs)}
        return XYC(num, Poly.constant(1), r.den)

    # predicates

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        # the reduced representation is canonical, so structural equality
        # is functional equality
        if not isinstance(other, XYC):
            return NotImplemented
        return (
            self.num == other.num
            and self.denx == other.denx
            and self.deny == other.deny
        )

    def __hash__(self):
        return hash((tuple(sorted(self.num.items(), key=lambda kv: kv[0])),
                      self.denx, self.deny))

    # arithmetic

    def __add__(self, other: "XYC") -> "XYC":
        gx = poly_gcd(self.denx, other.denx)
        gy = poly_gcd(self.deny, other.deny)
        lx_s = other.denx.exact_div(gx)
        lx_o = self.denx.exact_div(gx)
        ly_s = other.deny.exact_div(gy)
        ly_o = self.deny.exact_div(gy)
        a = _num_mul_xy(self.num, lx_s, ly_s)
        b = _num_mul_xy(other.num, lx_o, ly_o)
        return XYC(_num_add(a, b), self.denx * lx_s, self.deny * ly_s)

    def __neg__(self) -> "XYC":
        return XYC({k: -v for k, v in self.num.items()}, self.denx, self.deny)

    def __sub__(self, other: "XYC") -> "XYC":
        return self + (-other)

    def __mul__(self, other: "XYC") -> "XYC":
        num: Dict[Tuple[int, int], Scalar] = {}
        for (i1, j1), c1 in self.num.items():
            for (i2, j2), c2 in other.num.items():
                key = (i1 + i2, j1 + j2)
                prev = num.get(key, ZERO)
                num[key] = prev + c1 * c2
        return XYC(num, self.denx * other.denx, self.deny * other.deny)

    def scale(self, c) -> "XYC":
        c = Scalar.coerce(c)
        return XYC({k: v * c for k, v in self.num.items()}, self.denx, self.deny)

    def d_dx(self) -> "XYC":
        dn = {}
        for (i, j), c in self.num.items():
            if i:
                key = (i - 1, j)
                dn[key] = dn.get(key, ZERO) + c * i
        top = _num_mul_xy(dn, self.denx, Poly.constant(1))
        low = _num_mul_xy(self.num, self.denx.derivative(), Poly.constant(1))
        return XYC(_num_add(top, {k: -v for k, v in low.items()}),
                   self.denx * self.denx, self.deny)

    def d_dy(self) -> "XYC":
        dn = {}
        for (i, j), c in self.num.items():
            if j:
                key = (i, j - 1)
                dn[key] = dn.get(key, ZERO) + c * j
        top = _num_mul_xy(dn, Poly.constant(1), self.deny)
        low = _num_mul_xy(self.num, Poly.constant(1), self.deny.derivative())
        return XYC(_num_add(top, {k: -v for k, v in low.items()}),
                   self.denx, self.deny * self.deny)

    def eval_on_map(self, r: RatFun) -> RatFun:
        """Substitute y = r(x), returning a rational function of x."""
        by_j: Dict[int, List[Tuple[int, Scalar]]] = {}
        for (i, j), c in self.num.items():
            by_j.setdefault(j, []).append((i, c))
        acc = RatFun.constant(0)
        for j, entries in sorted(by_j.items()):
            px = Poly(
                tuple(
                    next((c for i, c in entries if i == k), ZERO)
                    for k in range(max(i for i, _ in entries) + 1)
                )
            )
            acc = acc + RatFun(px) * (r**j)
        deny_of_r = _poly_of_ratfun(self.deny, r)
        return acc / (RatFun(self.denx) * deny_of_r)

    def __repr__(self):
        return f"XYC(num={self.num}, denx={self.denx}, deny={self.deny})"


def _num_add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, ZERO) + v
    return {k: v for k, v in out.items() if v}


def _num_mul_xy(num, px: Poly, py: Poly):
    out: Dict[Tuple[int, int], Scalar] = {}
    for (i, j), c in num.items():
        for a, ca in enumerate(px.coeffs):
            if not ca:
                continue
            for b, cb in enumerate(py.coeffs):
                if not cb:
                    continue
                key = (i + a, j + b)
                out[key] = out.get(key, ZERO) + c * ca * cb
    return {k: v for k, v in out.items() if v}


def _num_x_slices(num) -> Dict[int, Poly]:
    """The numerator as polynomials in x, one per y power."""
    by_j: Dict[int, List[Tuple[int, Scalar]]] = {}
    for (i, j), c in num.items():
        by_j.setdefault(j, []).append((i, c))
    out = {}
    for j, entries in by_j.items():
        top = max(i for i, _ in entries)
        coeffs = [ZERO] * (top + 1)
        for i, c in entries:
            coeffs[i] = coeffs[i] + c
        out[j] = Poly(coeffs)
    return out


def _xyc_reduce(num, denx: Poly, deny: Poly):
    if not num:
        return {}, Poly.constant(1), Poly.constant(1)
    # cancel shared x content
    slices = _num_x_slices(num)
    gx = denx
    for p in slices.values():
        gx = poly_gcd(gx, p)
        if gx.degree() == 0:
            break
    if gx.degree() > 0:
        denx = denx.exact_div(gx)
        new = {}
        for j, p in slices.items():
            q = p.exact_div(gx)
            for i, c in enumerate(q.coeffs):
                if c:
                    new[(i, j)] = c
        num = new
    # cancel shared y content
    by_i: Dict[int, List[Tuple[int, Scalar]]] = {}
    for (i, j), c in num.items():
        by_i.setdefault(i, []).append((j, c))
    gy = deny
    for i, entries in by_i.items():
        top = max(j for j, _ in entries)
        coeffs = [ZERO] * (top + 1)
        for j, c in entries:
            coeffs[j] = coeffs[j] + c
        gy = poly_gcd(gy, Poly(coeffs))
        if gy.degree() == 0:
            break
    if gy.degree() > 0:
        deny = deny.exact_div(gy)
        new = {}
        for i, entries in by_i.items():
            top = max(j for j, _ in entries)
            coeffs = [ZERO] * (top + 1)
            for j, c in entries:
                coeffs[j] = coeffs[j] + c
            q = Poly(coeffs).exact_div(gy)
            for j, c in enumerate(q.coeffs):
                if c:
                    new[(i, j)] = c
        num = new
    # monic denominators
    lx = denx.leading()
    ly = deny.leading()
    scale = (lx * ly).inverse()
    if scale != ONE:
        denx = denx.scale(lx.inverse())
        deny = deny.scale(ly.inverse())
        num = {k: v * scale for k, v in num.items()}
    return num, denx, deny


def _poly_of_ratfun(p: Poly, r: RatFun) -> RatFun:
    acc = RatFun.constant(0)
    for k in range(p.degree(), -1, -1):
        acc = acc * r + RatFun.constant(p.coeff(k))
    return acc


class DiffPoly:
    """Differential polynomial: sum over monomials in y1..yk of XYC coefficients.

    Monomial keys are exponent tuples (a1, ..., ak) with a1 allowed to be
    negative and trailing zeros trimmed; the empty tuple is the constant
    monomial.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Tuple[int, ...], XYC]):
        clean = {}
        for exps, c in terms.items():
            t = tuple(exps)
            while t and t[-1] == 0:
                t = t[:-1]
            for a in t[1:]:
                if a < 0:
                    raise ValueError("only the y1 exponent may be negative")
            if not c.is_zero():
                if t in clean:
                    c = clean[t] + c
                if c.is_zero():
                    clean.pop(t, None)
                else:
                    clean[t] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DiffPoly is immutable")

    @staticmethod
    def zero() -> "DiffPoly":
        return DiffPoly({})

    @staticmethod
    def from_coeff(c: XYC) -> "DiffPoly":
        return DiffPoly({(): c})

    @staticmethod
    def y_deriv_monomial(exps: Sequence[int], c: Optional[XYC] = None) -> "DiffPoly":
        return DiffPoly({tuple(exps): XYC.const(1) if c is None else c})

    def order(self) -> int:
        return max((len(t) for t in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __add__(self, other: "DiffPoly") -> "DiffPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return DiffPoly(out)

    def __neg__(self) -> "DiffPoly":
        return DiffPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "DiffPoly") -> "DiffPoly":
        return self + (-other)

    def __mul__(self, other: "DiffPoly") -> "DiffPoly":
        out: Dict[Tuple[int, ...], XYC] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                n = max(len(e1), len(e2))
                key = tuple(
                    (e1[i] if i < len(e1) else 0) + (e2[i] if i < len(e2) else 0)
                    for i in range(n)
                )
                c = c1 * c2
                out[key] = out[key] + c if key in out else c
        return DiffPoly(out)

    def scale(self, c: XYC) -> "DiffPoly":
        return DiffPoly({k: v * c for k, v in self.terms.items()})

    def total_derivative(self) -> "DiffPoly":
        """Derivation D with D x = 1, D y = y1, D y_i = y_{i+1}."""
        out = DiffPoly.zero()
        for exps, c in self.terms.items():
            mono = {exps: c.d_dx()}
            bumped = (exps[0] + 1 if exps else 1,) + tuple(exps[1:])
            mono_y = {bumped: c.d_dy()}
            out = out + DiffPoly(mono) + DiffPoly(mono_y)
            for i, a in enumerate(exps):
                if not a:
                    continue
                ne = list(exps) + [0] * (i + 2 - len(exps))
                ne[i] -= 1
                ne[i + 1] += 1
                out = out + DiffPoly({tuple(ne): c.scale(a)})
        return out

    def eval_on_map(self, r: RatFun) -> RatFun:
        """Substitute y = r(x) and y_i = the i-th derivative of r."""
        if r.is_constant():
            raise ValueError("evaluation needs a nonconstant map")
        k = self.order()
        derivs: List[RatFun] = []
        cur = r
        for _ in range(k):
            cur = cur.derivative()
            derivs.append(cur)
        acc = RatFun.constant(0)
        for exps, c in self.terms.items():
            term = c.eval_on_map(r)
            for i, a in enumerate(exps):
                if a:
                    term = term * derivs[i] ** a
            acc = acc + term
        return acc

    def eval_on_jet(self, j: Jet) -> Scalar:
        """Evaluate at x = source, y = target, y_i = jet derivatives."""
        x0 = j.source
        y0 = j.target
        acc = ZERO
        for exps, c in self.terms.items():
            dx = c.denx.evaluate(x0)
            dy = c.deny.evaluate(y0)
            if not dx or not dy:
                raise ZeroDivisionError("coefficient pole at the jet base point")
            nval = ZERO
            for (i, jj), cc in c.num.items():
                nval = nval + cc * x0**i * y0**jj
            term = nval / (dx * dy)
            for i, a in enumerate(exps):
                if a:
                    term = term * j.derivs[i] ** a
            acc = acc + term
        return acc

    def __repr__(self):
        bits = []
        for exps in sorted(self.terms, key=lambda t: (len(t), t)):
            bits.append(f"{exps}:{self.terms[exps]!r}")
        return "DiffPoly{" + "; ".join(bits) + "}"
