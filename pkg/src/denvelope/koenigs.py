"""Linearization at a repelling fixed point and what rides on it.

Around a fixed point p with multiplier lam (not zero, not a root of
unity) there is a unique formal change of coordinate
Psi(w) = p + w + a_2 w^2 + ... with R(Psi(w)) = Psi(lam w); its
coefficients solve a triangular recursion with denominators lam^k - lam.
When p and lam live in the configured field everything is exact,
otherwise coefficients are big floats at a requested precision.

Coefficient functions of equations solved by R pull back through Psi to
series that obey exact scaling laws in lam, and different local branches
of the same cover differ by affine deck changes; both facts are exposed
here as checkable series computations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, List, Optional

import mpmath

from .algebra.ratfun import PointP1, RatFun
from .algebra.scalar import ONE, ZERO, Scalar
from .dynamics import FixedPointData
from .equations import GroupoidEq, eq_residual, gauge_transform_series
from .equations import g2 as g2_equation
from .equations import g3 as g3_equation
from .series import TruncatedSeries, series_of_ratfun


class KoenigsSeries:
    """The linearizing series at one fixed point, exact or numeric."""

    __slots__ = ("base_point", "multiplier", "series", "exact", "precision")

    def __init__(self, base_point, multiplier, series: TruncatedSeries,
                 exact: bool, precision: Optional[int]):
        object.__setattr__(self, "base_point", base_point)
        object.__setattr__(self, "multiplier", multiplier)
        object.__setattr__(self, "series", series)
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("KoenigsSeries is immutable")

    @property
    def order(self) -> int:
        return self.series.order

    def coefficient(self, k: int):
        return self.series.coeffs[k]

    def __repr__(self):
        tag = "exact" if self.exact else f"numeric@{self.precision}"
        return f"Koenigs(p={self.base_point}, lam={self.multiplier}, {tag}, N={self.order})"


def koenigs_series(
    r: RatFun,
    fixed_point,
    order: int = 32,
    precision: int = 128,
) -> KoenigsSeries:
    """Solve the linearization recursion to the given order.

    fixed_point may be a FixedPointData from the dynamics layer, a finite
    PointP1 or a Scalar.  Exact mode needs the point and multiplier in
    the configured field; numeric mode needs a repelling multiplier.
    """
    if order < 4:
        raise ValueError("order must be at least 4")
    point, lam, exact = _fixed_point_data(r, fixed_point, precision)
    if exact:
        return _koenigs_exact(r, point, lam, order)
    return _koenigs_numeric(r, point, lam, order, precision)


def _fixed_point_data(r, fp, precision):
    if isinstance(fp, FixedPointData):
        if fp.exact:
            if fp.point.is_infinity:
                raise ValueError("linearization base point must be finite")
            return fp.point.value, fp.multiplier, True
        # convert at working precision or the stored digits get rounded to 53 bits
        with mpmath.workprec(precision):
            return mpmath.mpc(fp.point), mpmath.mpc(fp.multiplier), False
    if isinstance(fp, PointP1):
        if fp.is_infinity:
            raise ValueError("linearization base point must be finite")
        fp = fp.value
    if isinstance(fp, (int, Fraction, Scalar)):
        p = Scalar.coerce(fp)
        v = r.evaluate(PointP1.of(p))
        if v.is_infinity or v.value != p:
            raise ValueError("not a fixed point")
        lam = r.derivative().eval_scalar(p)
        return p, lam, True
    # anything else is treated as a numeric point
    with mpmath.workprec(precision):
        z = mpmath.mpc(fp)
        img = r.eval_mpc(z, precision)
        if abs(img - z) > mpmath.mpf(2) ** (-(precision // 2)):
            raise ValueError("not a fixed point")
        lam = r.derivative().eval_mpc(z, precision)
    return z, lam, False


def _koenigs_exact(r: RatFun, p: Scalar, lam: Scalar, order: int) -> KoenigsSeries:
    if not lam:
        raise ValueError("superattracting fixed point has no linearization")
    for k in range(2, order + 1):
        if lam ** (k - 1) == ONE:
            raise ValueError("resonant multiplier")
    coeffs: List[Scalar] = [p, ONE] + [ZERO] * (order - 1)
    lam_pows = [ONE]
    for _ in range(order):
        lam_pows.append(lam_pows[-1] * lam)
    for k in range(2, order + 1):
        partial = TruncatedSeries(coeffs[: k + 1])
        f = series_of_ratfun(r, partial)
        coeffs[k] = f.coeffs[k] / (lam_pows[k] - lam)
    return KoenigsSeries(p, lam, TruncatedSeries(coeffs), True, None)


def _koenigs_numeric(r: RatFun, p, lam, order: int, precision: int) -> KoenigsSeries:
    with mpmath.workprec(precision):
        if abs(lam) <= 1:
            raise ValueError("not repelling")
        one = mpmath.mpc(1)
        coeffs = [mpmath.mpc(p), one] + [mpmath.mpc(0)] * (order - 1)
        lam_pows = [one]
        for _ in range(order):
            lam_pows.append(lam_pows[-1] * lam)
        for k in range(2, order + 1):
            partial = TruncatedSeries(coeffs[: k + 1])
            f = series_of_ratfun(r, partial)
            coeffs[k] = f.coeffs[k] / (lam_pows[k] - lam)
        return KoenigsSeries(p, lam, TruncatedSeries(coeffs), False, precision)


def linearization_defect_series(r: RatFun, ks: KoenigsSeries) -> TruncatedSeries:
    """R(Psi(w)) - Psi(lam w); identically zero through the series order."""
    ctx = mpmath.workprec(ks.precision) if ks.precision else _nullctx()
    with ctx:
        lhs = series_of_ratfun(r, ks.series)
        rhs = ks.series.scale_argument(ks.multiplier)
        return lhs - rhs


def linearization_residual(r: RatFun, ks: KoenigsSeries):
    """Largest coefficient magnitude of the defect; 0 exactly in exact mode."""
    defect = linearization_defect_series(r, ks)
    if ks.exact:
        if defect.is_exactly_zero():
            return 0
        return defect.max_abs_tail(0, 53)
    return defect.max_abs_tail(0, ks.precision)


class _nullctx:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


# -- transport of coefficients through Psi ----------------------------------------


def pullback_coeff_series(eq: GroupoidEq, ks: KoenigsSeries) -> TruncatedSeries:
    """The equation's coefficient pulled back through the linearization.

    For g2 this is (mu o Psi) Psi' + Psi''/Psi', for g3 the weight-two
    analogue with the Schwarzian correction; orders drop accordingly.
    The coefficient must be finite at the base point; when it is not,
    the base point itself is one of the coefficient's poles and a
    different repelling point has to be chosen (repelling_point_avoiding
    exists for exactly that).
    """
    if eq.kind not in ("g2", "g3"):
        raise ValueError("pullback is defined for g2 and g3 coefficients")
    _require_finite_at_base(eq.coeff, ks)
    ctx = mpmath.workprec(ks.precision) if ks.precision else _nullctx()
    with ctx:
        return gauge_transform_series(eq, ks.series)


def _require_finite_at_base(coeff: RatFun, ks: KoenigsSeries):
    if ks.exact:
        if coeff.den.evaluate(ks.base_point) == ZERO:
            raise ValueError(
                "coefficient has a pole at the base point; "
                "pick another point with repelling_point_avoiding")
        return
    with mpmath.workprec(ks.precision):
        v = coeff.den.eval_mpc(mpmath.mpc(ks.base_point), ks.precision)
        if abs(v) <= mpmath.mpf(2) ** (-(ks.precision // 2)):
            raise ValueError(
                "coefficient has a pole at the base point; "
                "pick another point with repelling_point_avoiding")


def pullback_mu_series(mu: RatFun, ks: KoenigsSeries) -> TruncatedSeries:
    return pullback_coeff_series(g2_equation(mu), ks)


def pullback_nu_series(nu: RatFun, ks: KoenigsSeries) -> TruncatedSeries:
    return pullback_coeff_series(g3_equation(nu), ks)


def scaling_defect(s: TruncatedSeries, lam, weight: int) -> TruncatedSeries:
    """lam^weight * s(lam w) - s(w); zero iff s has the exact scaling symmetry.

    A weight-w coefficient series transported through the linearization
    must satisfy this identity, because the linearized dynamics is
    multiplication by lam.  A series that is finite at 0 and satisfies
    it with a non-root-of-unity lam is forced to vanish, which is why
    solutions pull back to the zero series.
    """
    factor = lam**weight
    return s.scale_argument(lam).scale(factor) - s


def residual_pullback_series(eq: GroupoidEq, r: RatFun, ks: KoenigsSeries) -> TruncatedSeries:
    """(eq_residual(eq, r) o Psi) * (Psi')^weight.

    Equal, order by order, to the scaling defect of the pulled-back
    coefficient; in particular it vanishes exactly when r solves eq.
    """
    if eq.kind not in ("g2", "g3"):
        raise ValueError("defined for g2 and g3")
    weight = 1 if eq.kind == "g2" else 2
    rho = eq_residual(eq, r)
    ctx = mpmath.workprec(ks.precision) if ks.precision else _nullctx()
    with ctx:
        base = series_of_ratfun(rho, ks.series)
        dpsi = ks.series.derivative()
        out = base * dpsi
        if weight == 2:
            out = out * dpsi
        return out.truncate(ks.order - 1 - weight)


# -- deck transformations between branches ------------------------------------------


def deck_from_branches(
    branch_a: TruncatedSeries,
    branch_b: TruncatedSeries,
    precision: Optional[int] = None,
) -> TruncatedSeries:
    """The change of local coordinate delta with B(delta(u)) = A(u).

    branch_a and branch_b are local expansions of the same cover around
    two centers w0, w1 with equal values; delta(0) = 0, and the deck
    germ itself is gamma(w0 + u) = w1 + delta(u).  For a true cover of
    an exceptional map delta is linear: every coefficient above the
    first vanishes.
    """
    a0, b0 = branch_a.coeffs[0], branch_b.coeffs[0]
    if isinstance(a0, Scalar) and isinstance(b0, Scalar):
        if a0 != b0:
            raise ValueError("branch values differ at the centers")
    else:
        prec = precision or 53
        with mpmath.workprec(prec):
            if abs(mpmath.mpc(a0) - mpmath.mpc(b0)) > mpmath.mpf(2) ** (-(prec // 2)):
                raise ValueError("branch values differ at the centers")
    lin = branch_b.coeffs[1] if branch_b.order >= 1 else None
    if lin is None or not lin:
        raise ValueError("critical center: cover branch is not invertible there")
    ctx = mpmath.workprec(precision) if precision else _nullctx()
    with ctx:
        a_t = branch_a - TruncatedSeries.constant(a0, branch_a.order)
        b_t = branch_b - TruncatedSeries.constant(b0, branch_b.order)
        return b_t.reversion().compose(a_t)


def deck_transform_series(
    expand: Callable[[object, int], TruncatedSeries],
    w0,
    w1,
    order: int,
    precision: Optional[int] = None,
) -> TruncatedSeries:
    """Germ of the deck transformation sending w0 to w1, as a series in u = w - w0.

    expand(center, order) must produce the local expansion of the cover
    around a center; the two centers must have equal cover values.  The
    constant coefficient of the result is w1; for a true cover the rest
    is the linear term alone.
    """
    delta = deck_from_branches(expand(w0, order), expand(w1, order), precision)
    coeffs = list(delta.coeffs)
    coeffs[0] = coeffs[0] + w1
    return TruncatedSeries(coeffs)


def affineness_defect(gamma: TruncatedSeries, precision: int = 53):
    """max |coefficient of u^k|, k >= 2: zero exactly for affine germs."""
    return gamma.max_abs_tail(2, precision)


# -- closed-form cover expansions -----------------------------------------------------


def exp_cover_series(value, order: int) -> TruncatedSeries:
    """Expansion of c * e^u where c is the cover value at the center."""
    coeffs = [value]
    for k in range(1, order + 1):
        coeffs.append(coeffs[-1] / k)
    return TruncatedSeries(coeffs)


def cosh_cover_series(c, s, order: int) -> TruncatedSeries:
    """Expansion of C cosh(u) + S sinh(u), the two-to-one cover local form.

    C and S are the cover value and its derivative at the center and
    must satisfy C^2 - S^2 = 4 for the standard degree-two cover.
    """
    coeffs = []
    for k in range(order + 1):
        base = c if k % 2 == 0 else s
        if isinstance(base, Scalar):
            coeffs.append(base / math.factorial(k))
        else:
            coeffs.append(base / mpmath.factorial(k))
    return TruncatedSeries(coeffs)


def weierstrass_cover_series(g2, g3, x0, y0, order: int) -> TruncatedSeries:
    """Local expansion of the degree-two elliptic cover from its ODE.

    The cover P satisfies (P')^2 = 4 P^3 - g2 P - g3, hence
    P'' = 6 P^2 - g2/2; coefficients follow by the triangular recursion
    from the initial data P(0) = x0, P'(0) = y0, which must sit on the
    curve.
    """
    g2 = Scalar.coerce(g2)
    g3 = Scalar.coerce(g3)
    x0 = Scalar.coerce(x0)
    y0 = Scalar.coerce(y0)
    if y0 * y0 != x0**3 * 4 - g2 * x0 - g3:
        raise ValueError("initial data not on the curve")
    coeffs: List[Scalar] = [x0, y0]
    for k in range(order - 1):
        # coefficient of u^k in 6*P^2 - g2/2; needs c_0..c_k, all known
        sq = ZERO
        for i in range(0, k + 1):
            sq = sq + coeffs[i] * coeffs[k - i]
        rhs = sq * 6
        if k == 0:
            rhs = rhs - g2 / 2
        coeffs.append(rhs / ((k + 1) * (k + 2)))
    return TruncatedSeries(coeffs)
