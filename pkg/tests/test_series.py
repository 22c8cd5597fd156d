"""Truncated series against naive O(N^2) oracles written inline."""

from fractions import Fraction

import pytest

from conftest import rand_fraction, rand_mobius, rand_ratfun
from denvelope.algebra.scalar import ONE, ZERO, Scalar
from denvelope.series import (TruncatedSeries, affine_series, schwarzian_series,
                              series_of_ratfun)


def _rand_series(rng, order, unit=False):
    coeffs = [Scalar(rand_fraction(rng)) for _ in range(order + 1)]
    if unit:
        coeffs[0] = ZERO
        coeffs[1] = Scalar(rng.randint(1, 4))
    return TruncatedSeries(coeffs)


def _naive_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if i > order:
            break
        for j, bj in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ai * bj
    return out


def _naive_compose(outer, inner, order):
    # Horner from the top coefficient down, all plain lists of Fractions
    acc = [Fraction(0)] * (order + 1)
    for c in reversed(outer):
        acc = _naive_mul(acc, inner, order)
        acc[0] += c
    return acc


def _fracs(s):
    return [c.a for c in s.coeffs]


def test_mul_matches_naive(rng):
    for _ in range(15):
        a = _rand_series(rng, 8)
        b = _rand_series(rng, 8)
        assert _fracs(a * b) == _naive_mul(_fracs(a), _fracs(b), 8)


def test_reciprocal_matches_naive(rng):
    for _ in range(15):
        a = _rand_series(rng, 10)
        if not a.coeffs[0]:
            continue
        got = _fracs(a.reciprocal())
        af = _fracs(a)
        ref = [1 / af[0]]
        for k in range(1, 11):
            ref.append(-sum(af[j] * ref[k - j] for j in range(1, k + 1)) / af[0])
        assert got == ref


def test_compose_matches_naive(rng):
    for _ in range(15):
        outer = _rand_series(rng, 8)
        inner = _rand_series(rng, 8, unit=True)
        got = outer.compose(inner)
        assert _fracs(got) == _naive_compose(_fracs(outer), _fracs(inner), 8)


def test_reversion_inverts_composition(rng):
    for _ in range(15):
        s = _rand_series(rng, 9, unit=True)
        rev = s.reversion()
        # verify with the naive composition, not the fast one
        composed = _naive_compose(_fracs(s), _fracs(rev), 9)
        assert composed == _fracs(TruncatedSeries.identity(9))


def test_scale_argument_law(rng):
    s = _rand_series(rng, 7)
    lam = Scalar(Fraction(3, 2))
    scaled = s.scale_argument(lam)
    for k, c in enumerate(s.coeffs):
        assert scaled.coeffs[k] == c * lam**k


def test_derivative_shifts_degree(rng):
    s = _rand_series(rng, 7)
    d = s.derivative()
    for k in range(7):
        assert d.coeffs[k] == s.coeffs[k + 1] * (k + 1)


def test_series_of_ratfun_is_taylor_expansion(rng):
    for _ in range(10):
        r = rand_ratfun(rng, 2, nonconstant=True)
        t0 = Scalar(rng.randint(-3, 3))
        if not r.den.evaluate(t0):
            continue
        center = TruncatedSeries([t0, ONE] + [ZERO] * 6)
        s = series_of_ratfun(r, center)
        # differentiate the rational function directly to cross-check
        cur = r
        fact = Fraction(1)
        for k in range(s.order + 1):
            if k:
                fact *= k
            val = cur.eval_scalar(t0)
            assert s.coeffs[k] == val / Scalar(fact)
            cur = cur.derivative()


def test_schwarzian_series_vanishes_on_mobius(rng):
    for _ in range(10):
        phi = rand_mobius(rng)
        t0 = Scalar(rng.randint(-3, 3))
        if not phi.den.evaluate(t0) or not phi.derivative().num.evaluate(t0):
            continue
        center = TruncatedSeries([t0, ONE] + [ZERO] * 7)
        s = series_of_ratfun(phi, center)
        assert schwarzian_series(s).is_exactly_zero()


def test_schwarzian_and_affine_series_match_ratfun_formulas(rng):
    from denvelope.equations import affine_coeff, schwarzian
    for _ in range(8):
        r = rand_ratfun(rng, 2, nonconstant=True)
        t0 = Scalar(rng.randint(-3, 3))
        rp = r.derivative()
        if not r.den.evaluate(t0) or not rp.num.evaluate(t0):
            continue
        if not rp.den.evaluate(t0):
            continue
        center = TruncatedSeries([t0, ONE] + [ZERO] * 8)
        s = series_of_ratfun(r, center)
        for series_side, ratfun_side in ((schwarzian_series(s), schwarzian(r)),
                                         (affine_series(s), affine_coeff(r))):
            direct = series_of_ratfun(ratfun_side, center)
            k = min(series_side.order, direct.order)
            assert series_side.truncate(k).coeffs == direct.truncate(k).coeffs


def test_truncate():
    s = TruncatedSeries([ONE, Scalar(2), Scalar(3)])
    assert s.truncate(1).coeffs == (ONE, Scalar(2))
    assert s.truncate(4) is s   # never pads


def test_reversion_needs_unit():
    with pytest.raises(ValueError):
        TruncatedSeries([ZERO, ZERO, ONE]).reversion()
