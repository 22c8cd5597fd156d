"""Exceptional family generators, their composition laws, coefficient table."""

import pytest

from denvelope.algebra.poly import Poly
from denvelope.algebra.ratfun import RatFun, mobius_conjugate
from denvelope.algebra.scalar import Scalar
from denvelope.equations import eq_residual, g2 as g2_eq
from denvelope.families import (KNOWN_MU_STATUS, FamilySpec, LattesParams,
                                chebyshev, commutes, known_mu, lattes, monomial)

HALF_X = RatFun(Poly.of(0, Scalar(1) / 2))


def test_monomials():
    assert monomial(2) == RatFun(Poly.of(0, 0, 1))
    assert monomial(-2) == RatFun(Poly.of(1), Poly.of(0, 0, 1))
    assert monomial(6) == monomial(2).compose(monomial(3))
    with pytest.raises(ValueError):
        monomial(1)
    with pytest.raises(ValueError):
        monomial(0)


def test_chebyshev_normalizations():
    assert chebyshev(2) == RatFun(Poly.of(-2, 0, 1))
    assert chebyshev(2, "classical") == RatFun(Poly.of(-1, 0, 2))
    assert chebyshev(3, "classical") == RatFun(Poly.of(0, -3, 0, 4))
    for k in (2, 3, 4, 5):
        assert chebyshev(k) == mobius_conjugate(chebyshev(k, "classical"), HALF_X)
    with pytest.raises(ValueError):
        chebyshev(1)
    with pytest.raises(ValueError):
        chebyshev(3, "monic")


def test_chebyshev_composition_law():
    assert chebyshev(4) == chebyshev(2).compose(chebyshev(2))
    assert chebyshev(6) == chebyshev(2).compose(chebyshev(3))
    assert chebyshev(6) == chebyshev(3).compose(chebyshev(2))
    c = "classical"
    assert chebyshev(6, c) == chebyshev(2, c).compose(chebyshev(3, c))


def test_lattes_degrees_and_composition():
    l2 = lattes(LattesParams(4, 0, 2))
    l3 = lattes(LattesParams(4, 0, 3))
    assert l2.degree() == 4 and l3.degree() == 9
    l4 = lattes(LattesParams(4, 0, 4))
    assert l4 == l2.compose(l2)
    l6 = lattes(LattesParams(4, 0, 6), cap=6)
    assert l6 == l2.compose(l3) == l3.compose(l2)


def test_lattes_guards():
    with pytest.raises(ValueError, match="singular"):
        LattesParams(0, 0, 2)
    with pytest.raises(ValueError, match="singular"):
        LattesParams(3, 1, 2)   # g2^3 = 27 g3^2
    with pytest.raises(ValueError, match="k must be"):
        LattesParams(4, 0, 1)
    with pytest.raises(ValueError, match="cap"):
        lattes(LattesParams(4, 0, 6))


def test_commutes_within_and_across_families():
    assert commutes(monomial(2), monomial(3))
    assert commutes(monomial(2), monomial(-3))
    assert commutes(chebyshev(2), chebyshev(3))
    l2 = lattes(LattesParams(4, 0, 2))
    l3 = lattes(LattesParams(4, 0, 3))
    assert commutes(l2, l3)
    assert not commutes(monomial(2), chebyshev(2))
    assert not commutes(monomial(3), l2)
    assert not commutes(chebyshev(3), l2)
    # same family, different curve: no commutation either
    other = lattes(LattesParams(4, 1, 2))
    assert not commutes(l2, other)


def test_known_mu_cases_with_generators():
    assert eq_residual(g2_eq(known_mu(FamilySpec(2))), monomial(2)).is_zero()
    assert eq_residual(g2_eq(known_mu(FamilySpec(3))), chebyshev(2)).is_zero()
    spec4 = FamilySpec(4, g2=4, g3=1)
    mu4 = known_mu(spec4)
    assert eq_residual(g2_eq(mu4), lattes(LattesParams(4, 1, 2))).is_zero()
    # and for a second curve, exercising the parameter dependence
    spec4b = FamilySpec(4, g2=0, g3=2)
    assert eq_residual(g2_eq(known_mu(spec4b)),
                       lattes(LattesParams(0, 2, 2))).is_zero()


def test_known_mu_table_cases():
    mu5 = known_mu(FamilySpec(5, g2=4))
    mu6 = known_mu(FamilySpec(6, g3=2))
    mu7 = known_mu(FamilySpec(7, g3=2))
    for mu in (mu5, mu6, mu7):
        assert isinstance(mu, RatFun) and not mu.is_zero()
    assert set(KNOWN_MU_STATUS) == {2, 3, 4, 5, 6, 7}
    for cid in (2, 3, 4):
        assert "verified" in KNOWN_MU_STATUS[cid]
    for cid in (5, 6, 7):
        assert "tabulated" in KNOWN_MU_STATUS[cid]


def test_known_mu_guards():
    with pytest.raises(ValueError, match="rotation"):
        known_mu(FamilySpec(1))
    with pytest.raises(ValueError, match="needs g2"):
        known_mu(FamilySpec(4, g3=1))
    with pytest.raises(ValueError, match="g3 = 0"):
        known_mu(FamilySpec(5, g2=4, g3=1))
    with pytest.raises(ValueError, match="g2 = 0"):
        known_mu(FamilySpec(6, g2=4, g3=1))
    with pytest.raises(ValueError):
        FamilySpec(9)
