"""Normal-form equations: residuals, gauge cocycles, chart flip, jets bridge.

The gauge action composes contravariantly: applying phi then psi equals
applying phi o psi in one step, because the affine and Schwarzian terms
are cocycles for composition.
"""

from fractions import Fraction

import pytest

from conftest import rand_mobius, rand_ratfun
from denvelope.algebra.poly import Poly
from denvelope.algebra.ratfun import RatFun, mobius_conjugate
from denvelope.algebra.scalar import Scalar
from denvelope.equations import (GroupoidEq, affine_coeff, chart_transform,
                                 cocycle_residual, eq_residual, g1, g2, g3,
                                 gauge_transform, ginf, is_solution, schwarzian,
                                 to_diffpoly)
from denvelope.jets import jet_of_map

X = RatFun.x()
FLIP = RatFun(Poly.of(1), Poly.of(0, 1))   # 1/x


def test_known_solutions():
    mono_mu = RatFun(Poly.of(-1), Poly.of(0, 1))          # -1/x
    for k in (2, 3, 5):
        assert is_solution(g2(mono_mu), RatFun(Poly.monomial(k)))
    cheb_mu = RatFun(Poly.of(0, -1), Poly.of(-4, 0, 1))   # -x/(x^2-4)
    assert is_solution(g2(cheb_mu), RatFun(Poly.of(-2, 0, 1)))
    assert is_solution(g1(1, RatFun.constant(1)), RatFun(Poly.of(1, 1)))
    assert not is_solution(g2(RatFun.constant(0)), RatFun(Poly.of(0, 0, 1)))


def test_ginf_always_solved(rng):
    for _ in range(5):
        r = rand_ratfun(rng, 3, nonconstant=True)
        assert eq_residual(ginf(), r).is_zero()


def test_schwarzian_vanishes_exactly_on_mobius(rng):
    for _ in range(10):
        phi = rand_mobius(rng)
        assert schwarzian(phi).is_zero()
    r = rand_ratfun(rng, 2, nonconstant=True)
    if r.degree() >= 2:
        assert not schwarzian(r).is_zero()


def test_schwarzian_is_twice_classical(rng):
    # oracle coded from scratch: Sc(r) = r'''/r' - (3/2)(r''/r')^2
    for _ in range(50):
        r = rand_ratfun(rng, 3, nonconstant=True)
        d1 = r.derivative()
        d2 = d1.derivative()
        d3 = d2.derivative()
        classical = d3 / d1 - (d2 / d1) * (d2 / d1) * Fraction(3, 2)
        assert (schwarzian(r) - classical * 2).is_zero()


def test_affine_coeff_of_affine_maps():
    assert affine_coeff(RatFun(Poly.of(5, 3))).is_zero()
    # log-derivative of R' for x^2: R''/R' = 1/x
    assert affine_coeff(RatFun(Poly.of(0, 0, 1))) == FLIP


def test_gauge_cocycle_kind2(rng):
    for _ in range(25):
        mu = rand_ratfun(rng, 2)
        phi = rand_mobius(rng)
        psi = rand_mobius(rng)
        once = gauge_transform(gauge_transform(g2(mu), phi), psi)
        combined = gauge_transform(g2(mu), phi.compose(psi))
        assert (once.coeff - combined.coeff).is_zero()


def test_gauge_cocycle_kind3(rng):
    for _ in range(25):
        nu = rand_ratfun(rng, 2)
        phi = rand_mobius(rng)
        psi = rand_mobius(rng)
        once = gauge_transform(gauge_transform(g3(nu), phi), psi)
        combined = gauge_transform(g3(nu), phi.compose(psi))
        assert (once.coeff - combined.coeff).is_zero()


def test_cocycle_residual_worked_examples():
    sq = RatFun(Poly.of(0, 0, 1))
    cb = RatFun(Poly.of(0, 0, 0, 1))
    # S(x^4) = -15/x^2 splits as (-3/x^4)(2x)^2 + (-3/x^2)
    assert schwarzian(sq.compose(sq)) == RatFun(Poly.of(-15), Poly.of(0, 0, 1))
    assert cocycle_residual(3, sq, sq).is_zero()
    # (x^6)''/(x^6)' = 5/x splits as (2/x^2)(2x) + 1/x
    assert affine_coeff(cb.compose(sq)) == RatFun(Poly.of(5), Poly.of(0, 1))
    assert cocycle_residual(2, sq, cb).is_zero()
    mob = RatFun(Poly.of(1, 2), Poly.of(3, 1))
    assert cocycle_residual(2, mob, RatFun(Poly.of(-1, 1), Poly.of(2, 3))).is_zero()
    eta = RatFun(Poly.of(1), Poly.of(0, 0, 1))
    assert cocycle_residual(1, sq, cb, extra=(2, eta)).is_zero()
    with pytest.raises(ValueError):
        cocycle_residual(1, sq, cb)
    with pytest.raises(ValueError):
        cocycle_residual(4, sq, cb)
    with pytest.raises(ValueError):
        cocycle_residual(2, RatFun.constant(3), cb)


def test_cocycle_residual_random(rng):
    for _ in range(20):
        f = rand_ratfun(rng, 3, nonconstant=True)
        h = rand_ratfun(rng, 3, nonconstant=True)
        assert cocycle_residual(2, f, h).is_zero()
        assert cocycle_residual(3, f, h).is_zero()
        n = rng.choice((-3, -2, -1, 1, 2, 3))
        eta = rand_ratfun(rng, 2, nonconstant=True)
        assert cocycle_residual(1, f, h, extra=(n, eta)).is_zero()


def test_gauge_transports_solutions(rng):
    mu = RatFun(Poly.of(-1), Poly.of(0, 1))
    r = RatFun(Poly.of(0, 0, 1))
    for _ in range(10):
        phi = rand_mobius(rng)
        eq_t = gauge_transform(g2(mu), phi)
        assert is_solution(eq_t, mobius_conjugate(r, phi))
    # the worked instance: phi = 2x on x^2 - 2
    two_x = RatFun(Poly.of(0, 2))
    cheb_mu = RatFun(Poly.of(0, -1), Poly.of(-4, 0, 1))
    moved = gauge_transform(g2(cheb_mu), two_x)
    assert moved.coeff == RatFun(Poly.of(0, -1), Poly.of(-1, 0, 1))
    assert is_solution(moved, mobius_conjugate(RatFun(Poly.of(-2, 0, 1)), two_x))


def test_gauge_identity_is_neutral(rng):
    mu = rand_ratfun(rng, 2)
    assert gauge_transform(g2(mu), X).coeff == mu
    assert gauge_transform(g3(mu), X).coeff == mu


def test_chart_transform_is_flip_gauge(rng):
    for i in range(100):
        coeff = rand_ratfun(rng, 2)
        eq = g2(coeff) if i % 2 else g3(coeff)
        assert chart_transform(chart_transform(eq)) == eq
        assert chart_transform(eq).coeff == gauge_transform(eq, FLIP).coeff


def test_g1_gauge(rng):
    eta = RatFun(Poly.of(1), Poly.of(0, 0, 1))
    r = RatFun(Poly.of(0, 3))              # eta(3x) 3^n ... with n = 2
    assert is_solution(g1(2, eta), r)
    for _ in range(10):
        phi = rand_mobius(rng)
        moved = gauge_transform(g1(2, eta), phi)
        assert moved.kind == "g1" and moved.n == 2
        assert is_solution(moved, mobius_conjugate(r, phi))


def test_eq_residual_matches_diffpoly_evaluation(rng):
    for _ in range(10):
        r = rand_ratfun(rng, 2, nonconstant=True)
        mu = rand_ratfun(rng, 1)
        for eq in (g2(mu), g3(mu), g1(1, RatFun(Poly.of(1), Poly.of(0, 1)))):
            lhs = eq_residual(eq, r)
            rhs = to_diffpoly(eq).eval_on_map(r)
            assert (lhs - rhs).is_zero()


def test_solutions_stable_under_total_derivative():
    sq = RatFun(Poly.of(0, 0, 1))
    pairs = [
        (g2(RatFun(Poly.of(-1), Poly.of(0, 1))), sq),
        (g2(RatFun(Poly.of(0, -1), Poly.of(-4, 0, 1))), RatFun(Poly.of(-2, 0, 1))),
        (g3(RatFun(Poly.of(1), Poly.of(0, 0, 1))), sq),
        (g1(2, RatFun(Poly.of(1), Poly.of(0, 0, 1))), RatFun(Poly.of(0, 3))),
    ]
    for eq, r in pairs:
        assert is_solution(eq, r)
        derived = to_diffpoly(eq).total_derivative()
        for p in (3, Fraction(1, 2), -3):
            jet = jet_of_map(r, p, derived.order())
            assert not derived.eval_on_jet(jet)
    # non-solution: the derived equation sees the drift
    drift = to_diffpoly(g2(RatFun.constant(0))).total_derivative()
    assert drift.eval_on_jet(jet_of_map(sq, 2, drift.order()))


def test_constructor_guards():
    with pytest.raises(ValueError):
        GroupoidEq("g4")
    with pytest.raises(ValueError):
        g1(0, RatFun.constant(1))
