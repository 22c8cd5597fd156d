"""Critical orbits, fixed points, exceptional sets, pole candidates."""

import pytest

from conftest import rand_ratfun
from denvelope.algebra.divisor import Divisor
from denvelope.algebra.poly import Poly
from denvelope.algebra.ratfun import PointP1, RatFun
from denvelope.algebra.scalar import Scalar
from denvelope.dynamics import (candidate_pole_divisor, critical_divisor,
                                exceptional_set, fixed_divisor, fixed_points,
                                local_degree, postcritical_closure,
                                ramification_total, repelling_point_avoiding)
from denvelope.families import LattesParams, chebyshev, lattes, monomial

SQ = RatFun(Poly.of(0, 0, 1))          # x^2
CH2 = RatFun(Poly.of(-2, 0, 1))        # x^2 - 2
INF = PointP1.infinity()


def test_local_degree():
    assert local_degree(SQ, PointP1.of(0)) == 2
    assert local_degree(SQ, INF) == 2
    assert local_degree(SQ, PointP1.of(1)) == 1
    inv_sq = RatFun(Poly.of(1), Poly.of(0, 0, 1))
    assert local_degree(inv_sq, PointP1.of(0)) == 2
    assert local_degree(inv_sq, INF) == 2


def test_critical_divisor_examples():
    d = critical_divisor(SQ)
    assert d.mult_at(PointP1.of(0)) == 1 and d.inf_mult == 1
    d3 = critical_divisor(RatFun(Poly.monomial(3)))
    assert d3.mult_at(PointP1.of(0)) == 2 and d3.inf_mult == 2


def test_ramification_total_is_2d_minus_2(rng):
    for _ in range(12):
        r = rand_ratfun(rng, 4, nonconstant=True)
        assert ramification_total(r) == 2 * r.degree() - 2


def test_postcritical_closure_chebyshev():
    pc, overflow, rounds = postcritical_closure(CH2)
    assert not overflow and rounds <= 8
    expected = Divisor.from_pairs([(Poly.of(-2, 1), 1), (Poly.of(2, 1), 1)], 1)
    assert pc == expected


def test_postcritical_closure_overflow():
    pc, overflow, rounds = postcritical_closure(RatFun(Poly.of(1, 0, 1)))
    assert overflow and rounds <= 8


def test_fixed_divisor():
    d = fixed_divisor(SQ)
    assert d.mult_at(PointP1.of(0)) == 1
    assert d.mult_at(PointP1.of(1)) == 1
    assert d.inf_mult == 1
    # x + 1 only fixes infinity, with full multiplicity
    aff = fixed_divisor(RatFun(Poly.of(1, 1)))
    assert aff.factors == () and aff.inf_mult == 2


def test_fixed_points_square():
    pts = fixed_points(SQ)
    assert sum(p.multiplicity for p in pts) == SQ.degree() + 1
    by_pt = {str(p.point): p for p in pts if p.exact}
    assert by_pt["0"].multiplier == Scalar(0)
    assert by_pt["1"].multiplier == Scalar(2)
    assert by_pt["inf"].multiplier == Scalar(0)
    assert by_pt["1"].is_repelling() and not by_pt["0"].is_repelling()


def test_fixed_points_multiplicity_sum(rng):
    for _ in range(6):
        r = rand_ratfun(rng, 3, nonconstant=True)
        try:
            pts = fixed_points(r)
        except ValueError:
            continue   # identity-like degenerate draw
        assert sum(p.multiplicity for p in pts) == r.degree() + 1


def test_fixed_points_period_two():
    pts = fixed_points(RatFun(Poly.of(-1, 0, 1)), period=2)
    assert sum(p.multiplicity for p in pts) == 2**2 + 1
    cycle = [p for p in pts if p.exact and not p.point.is_infinity
             and p.point in (PointP1.of(0), PointP1.of(-1))]
    assert len(cycle) == 2
    for p in cycle:
        assert p.multiplier == Scalar(0)   # superattracting 2-cycle through 0


def test_exceptional_sets():
    assert exceptional_set(SQ).support_degree() == 2
    assert exceptional_set(RatFun(Poly.monomial(5))).support_degree() == 2
    assert exceptional_set(CH2).support_degree() == 1
    assert exceptional_set(chebyshev(3)).support_degree() == 1
    assert exceptional_set(lattes(LattesParams(4, 0, 2))).is_empty()
    inv_sq = RatFun(Poly.of(1), Poly.of(0, 0, 1))
    e = exceptional_set(inv_sq)
    assert e.mult_at(PointP1.of(0)) == 1 and e.inf_mult == 1
    with pytest.raises(ValueError):
        exceptional_set(RatFun(Poly.of(1, 1)))


def test_candidate_pole_divisor_square():
    d, overflow = candidate_pole_divisor(SQ)
    assert not overflow
    assert d == Divisor.from_pairs([(Poly.of(0, 1), 1)], 1)


def test_candidate_pole_divisor_chebyshev():
    d, overflow = candidate_pole_divisor(CH2)
    assert not overflow
    expected = Divisor.from_pairs(
        [(Poly.of(-2, 1), 1), (Poly.of(0, 1), 1), (Poly.of(2, 1), 1)], 1)
    assert d == expected


def test_candidate_pole_divisor_overflow():
    d, overflow = candidate_pole_divisor(RatFun(Poly.of(1, 0, 1)))
    assert overflow and d is None


def test_candidate_pole_divisor_mobius():
    d, overflow = candidate_pole_divisor(RatFun(Poly.of(1, 2), Poly.of(3, 1)))
    assert not overflow and d.inf_mult == 1
    assert d.mult_at(PointP1.of(0)) == 0   # flattened fixed support only
    for f, m in d.factors:
        assert m == 1


def test_repelling_point_avoiding_chebyshev():
    avoid = Divisor.from_pairs([(Poly.of(-2, 1), 1), (Poly.of(2, 1), 1)])
    p = repelling_point_avoiding(CH2, avoid)
    assert p.exact and p.period == 1
    assert p.point == PointP1.of(-1)
    assert p.multiplier == Scalar(-2)
    assert p.is_repelling()


def test_repelling_point_exhaustion_message():
    avoid = Divisor.from_pairs([(Poly.of(0, 1), 1), (Poly.of(-1, 1), 1)], 1)
    with pytest.raises(ValueError) as exc:
        repelling_point_avoiding(SQ, avoid, period_cap=1, allow_numeric=False)
    assert "repelling point" in str(exc.value)


def test_monomial_candidate_matches_square():
    d, _ = candidate_pole_divisor(monomial(2))
    e, _ = candidate_pole_divisor(SQ)
    assert d == e
